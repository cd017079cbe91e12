#include "avrpid/transfer_function.hpp"

#include "avrpid/errors.hpp"

namespace avrpid {

TransferFunction::TransferFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw InvalidParameterError("transfer function denominator is zero");
  }
}

TransferFunction tf_series(const TransferFunction& a, const TransferFunction& b) {
  return {a.num() * b.num(), a.den() * b.den()};
}

TransferFunction tf_feedback(const TransferFunction& forward,
                             const TransferFunction& feedback) {
  Polynomial num = forward.num() * feedback.den();
  Polynomial den = forward.den() * feedback.den() + forward.num() * feedback.num();
  if (den.is_zero()) {
    throw DegenerateLoopError("feedback loop denominator collapsed to zero");
  }
  return {std::move(num), std::move(den)};
}

}  // namespace avrpid
