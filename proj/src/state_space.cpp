#include "avrpid/state_space.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "avrpid/errors.hpp"

namespace avrpid {

StateSpaceModel tf_to_state_space(const TransferFunction& tf) {
  if (!tf.proper()) {
    throw ImproperSystemError("deg(num) > deg(den): no state-space form");
  }
  const auto& den = tf.den().coeffs();
  const auto& num = tf.num().coeffs();
  const std::size_t n = tf.den().degree();
  const double lead = den.back();

  // monic denominator and padded numerator
  std::vector<double> a(n), b(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i] = den[i] / lead;
  for (std::size_t i = 0; i < num.size(); ++i) b[i] = num[i] / lead;

  StateSpaceModel ss;
  ss.d = b[n];
  ss.a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                               static_cast<Eigen::Index>(n));
  ss.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  ss.c = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(n));
  if (n == 0) return ss;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    ss.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    ss.a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(i)) = -a[i];
    ss.c(static_cast<Eigen::Index>(i)) = b[i] - ss.d * a[i];
  }
  ss.b(static_cast<Eigen::Index>(n - 1)) = 1.0;
  return ss;
}

TransferFunction state_space_to_tf(const StateSpaceModel& ss) {
  const Eigen::Index n = ss.a.rows();
  if (n == 0) {
    return {Polynomial{ss.d}, Polynomial{1.0}};
  }
  // Faddeev-LeVerrier: char poly s^n + q_{n-1} s^{n-1} + ... + q_0 and the
  // adjugate expansion adj(sI - A) = M_1 s^{n-1} + ... + M_n.
  std::vector<double> den(static_cast<std::size_t>(n) + 1, 0.0);
  den[static_cast<std::size_t>(n)] = 1.0;
  std::vector<double> num(static_cast<std::size_t>(n) + 1, 0.0);

  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    const double cmb = (ss.c * m * ss.b)(0, 0);
    num[static_cast<std::size_t>(n - k)] = cmb;
    const Eigen::MatrixXd am = ss.a * m;
    const double q = -am.trace() / static_cast<double>(k);
    den[static_cast<std::size_t>(n - k)] = q;
    m = am + q * Eigen::MatrixXd::Identity(n, n);
  }
  for (Eigen::Index k = 0; k <= n; ++k) {
    num[static_cast<std::size_t>(k)] += ss.d * den[static_cast<std::size_t>(k)];
  }
  return {Polynomial(std::move(num)), Polynomial(std::move(den))};
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> discretize_zoh(
    const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double dt) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n + m, n + m);
  block.topLeftCorner(n, n) = a;
  block.topRightCorner(n, m) = b;
  const Eigen::MatrixXd e = (block * dt).exp();
  return {e.topLeftCorner(n, n), e.topRightCorner(n, m)};
}

}  // namespace avrpid
