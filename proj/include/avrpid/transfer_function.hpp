#pragma once

#include <complex>

#include "avrpid/polynomial.hpp"

namespace avrpid {

/// Rational function num(s)/den(s). No pole-zero cancellation is ever
/// performed; blocks compose exactly as written.
class TransferFunction {
 public:
  TransferFunction() : num_{0.0}, den_{1.0} {}
  TransferFunction(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  std::complex<double> operator()(std::complex<double> s) const {
    return num_(s) / den_(s);
  }
  double dc_gain() const { return num_(0.0) / den_(0.0); }
  bool proper() const { return num_.is_zero() || num_.degree() <= den_.degree(); }

  bool operator==(const TransferFunction&) const = default;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Cascade: num = a.num b.num, den = a.den b.den.
TransferFunction tf_series(const TransferFunction& a, const TransferFunction& b);

/// Negative feedback G/(1 + G H) over a common denominator:
/// num = G.num H.den, den = G.den H.den + G.num H.num.
TransferFunction tf_feedback(const TransferFunction& forward,
                             const TransferFunction& feedback);

}  // namespace avrpid
