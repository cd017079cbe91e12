#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avrpid/avr.hpp"
#include "avrpid/metrics.hpp"
#include "avrpid/simulate.hpp"

namespace avrpid {

enum class ObjectiveKind {
  Iae,
  Itae,
  Ise,
  Itse,
  Rmse,
  Zlg,       // weighted transient criterion, weight beta
  Combined,  // mu * ITSE + ZLG
  Of1,       // W1*ITAE + W2*Ts + W3*Mp
  Of2,       // W1*IAE  + W2*Ts + W3*Mp
  Of3,       // W1*ITSE + W2*Ts + W3*Mp
  Of4        // W1*ISE  + W2*Ts + W3*Mp
};

const char* objective_name(ObjectiveKind kind);
ObjectiveKind objective_from_name(const std::string& name);

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::Itse;
  double beta = 1.0;
  double mu = 50.0;
  double w1 = 1.0;
  double w2 = 0.1;
  double w3 = 1.0;
  SimGrid grid{1e-3, 10.0};
  bool literal_rmse = false;  // keep the printed integral form, i.e. IAE/T

  void validate() const;
  std::vector<std::string> warnings() const;  // mu outside [30, 70]
};

inline constexpr double kPenaltyBase = 1e6;

struct ObjectiveValue {
  double value = 0.0;
  bool penalized = false;
  std::optional<TransientMetrics> metrics;
};

/// Trapezoidal quadrature of the error e = reference - v on the grid:
/// IAE, ITAE, ISE, ITSE integrate |e|, t|e|, e^2, t e^2; RMSE is
/// sqrt(ISE / horizon) (or IAE/horizon with literal_rmse).
double integral_index(ObjectiveKind kind, const StepResponse& r,
                      bool literal_rmse = false);

/// (1 - e^-beta)(Mp + Ess) + e^-beta (Ts - Tr), Mp entering as a fraction.
double zlg(const TransientMetrics& m, double beta);

double combined_j(double itse, double zlg_value, double mu);

/// W1*index + W2*Ts + W3*Mp for the OF1..OF4 family.
double weighted_of(ObjectiveKind kind, double index_value, double ts_s,
                   double mp_fraction, double w1, double w2, double w3);

/// Total objective: pole-checks the closed loop first and returns
/// kPenaltyBase + sum of positive real parts without simulating when
/// unstable; simulation overflow and unsettled metrics also penalize
/// instead of throwing, so optimizers stay total.
ObjectiveValue evaluate_gains(const AvrParams& p, const PidGains& g,
                              const ObjectiveSpec& spec);

}  // namespace avrpid
