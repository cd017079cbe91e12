#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace avrpid {

/// Real polynomial in s with coefficients stored in ascending powers:
/// coeffs()[k] multiplies s^k. Trailing (highest-order) zeros are trimmed on
/// construction; the zero polynomial is represented as {0}.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs)
      : Polynomial(std::vector<double>(coeffs)) {}

  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const { return coeffs_.back(); }

  double operator()(double s) const;
  std::complex<double> operator()(std::complex<double> s) const;

  Polynomial scaled(double factor) const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<double> coeffs_;
};

/// All complex roots with multiplicity, from the eigenvalues of the balanced
/// companion matrix. Degree-0 input is an error.
std::vector<std::complex<double>> poly_roots(const Polynomial& p);

}  // namespace avrpid
