#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>

#include "avrpid/transfer_function.hpp"

namespace avrpid {

/// Single-input single-output realization x' = A x + B u, y = C x + D u.
/// A static gain has order 0 and lives entirely in D.
struct StateSpaceModel {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::RowVectorXd c;
  double d = 0.0;

  std::size_t order() const { return static_cast<std::size_t>(a.rows()); }
};

/// Controllable canonical form. Requires deg(num) <= deg(den).
StateSpaceModel tf_to_state_space(const TransferFunction& tf);

/// C (sI - A)^-1 B + D expanded by the Faddeev-LeVerrier recursion; the
/// inverse of tf_to_state_space up to denominator normalization.
TransferFunction state_space_to_tf(const StateSpaceModel& ss);

/// Zero-order-hold discretization: Phi = exp(A dt) and Gamma = the input
/// integral, computed together from the augmented exponential
/// exp([[A, B], [0, 0]] dt) so singular A needs no special case.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> discretize_zoh(
    const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double dt);

}  // namespace avrpid
