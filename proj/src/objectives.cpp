#include "avrpid/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "avrpid/errors.hpp"
#include "avrpid/polynomial.hpp"

namespace avrpid {

const char* objective_name(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Iae: return "iae";
    case ObjectiveKind::Itae: return "itae";
    case ObjectiveKind::Ise: return "ise";
    case ObjectiveKind::Itse: return "itse";
    case ObjectiveKind::Rmse: return "rmse";
    case ObjectiveKind::Zlg: return "zlg";
    case ObjectiveKind::Combined: return "j";
    case ObjectiveKind::Of1: return "of1";
    case ObjectiveKind::Of2: return "of2";
    case ObjectiveKind::Of3: return "of3";
    case ObjectiveKind::Of4: return "of4";
  }
  return "?";
}

ObjectiveKind objective_from_name(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (ObjectiveKind k :
       {ObjectiveKind::Iae, ObjectiveKind::Itae, ObjectiveKind::Ise,
        ObjectiveKind::Itse, ObjectiveKind::Rmse, ObjectiveKind::Zlg,
        ObjectiveKind::Combined, ObjectiveKind::Of1, ObjectiveKind::Of2,
        ObjectiveKind::Of3, ObjectiveKind::Of4}) {
    if (lower == objective_name(k)) return k;
  }
  throw InvalidParameterError("unknown objective: " + name);
}

void ObjectiveSpec::validate() const {
  if (!(beta > 0.0)) throw InvalidParameterError("beta must be positive");
  if (!(mu > 0.0)) throw InvalidParameterError("mu must be positive");
  if (w1 < 0.0 || w2 < 0.0 || w3 < 0.0) {
    throw InvalidParameterError("objective weights must be nonnegative");
  }
  if (w1 == 0.0 && w2 == 0.0 && w3 == 0.0) {
    throw InvalidParameterError("objective weights must not all be zero");
  }
  grid.validate();
}

std::vector<std::string> ObjectiveSpec::warnings() const {
  std::vector<std::string> out;
  if (mu < 30.0 || mu > 70.0) {
    out.push_back("mu = " + std::to_string(mu) +
                  " outside the recommended range [30, 70]");
  }
  return out;
}

double integral_index(ObjectiveKind kind, const StepResponse& r,
                      bool literal_rmse) {
  const std::size_t n = r.v.size();
  if (n < 2) throw InvalidParameterError("need at least two samples");

  auto integrand = [&](std::size_t k) {
    const double e = r.reference - r.v[k];
    const double t = r.grid.time_at(k);
    switch (kind) {
      case ObjectiveKind::Iae: return std::abs(e);
      case ObjectiveKind::Itae: return t * std::abs(e);
      case ObjectiveKind::Ise: return e * e;
      case ObjectiveKind::Itse: return t * e * e;
      case ObjectiveKind::Rmse: return literal_rmse ? std::abs(e) : e * e;
      default:
        throw InvalidParameterError("not an integral performance index");
    }
  };

  double acc = 0.0;
  double prev = integrand(0);
  for (std::size_t k = 1; k < n; ++k) {
    const double cur = integrand(k);
    acc += 0.5 * (prev + cur) * r.grid.dt;
    prev = cur;
  }
  if (kind == ObjectiveKind::Rmse) {
    const double horizon = r.grid.time_at(n - 1);
    return literal_rmse ? acc / horizon : std::sqrt(acc / horizon);
  }
  return acc;
}

double zlg(const TransientMetrics& m, double beta) {
  if (!(beta > 0.0)) throw InvalidParameterError("beta must be positive");
  const double decay = std::exp(-beta);
  const double mp_fraction = m.mp_pct / 100.0;
  return (1.0 - decay) * (mp_fraction + m.ess) + decay * (m.ts - m.tr);
}

double combined_j(double itse, double zlg_value, double mu) {
  if (!std::isfinite(itse) || !std::isfinite(zlg_value)) {
    throw InvalidParameterError("non-finite objective terms");
  }
  return mu * itse + zlg_value;
}

double weighted_of(ObjectiveKind kind, double index_value, double ts_s,
                   double mp_fraction, double w1, double w2, double w3) {
  switch (kind) {
    case ObjectiveKind::Of1:
    case ObjectiveKind::Of2:
    case ObjectiveKind::Of3:
    case ObjectiveKind::Of4:
      break;
    default:
      throw InvalidParameterError("weighted_of handles OF1..OF4 only");
  }
  return w1 * index_value + w2 * ts_s + w3 * mp_fraction;
}

namespace {

ObjectiveKind index_for(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Of1: return ObjectiveKind::Itae;
    case ObjectiveKind::Of2: return ObjectiveKind::Iae;
    case ObjectiveKind::Of3: return ObjectiveKind::Itse;
    case ObjectiveKind::Of4: return ObjectiveKind::Ise;
    default: return kind;
  }
}

}  // namespace

ObjectiveValue evaluate_gains(const AvrParams& p, const PidGains& g,
                              const ObjectiveSpec& spec) {
  spec.validate();
  g.validate();

  const TransferFunction closed = avr_pid_closed_loop(p, g);
  if (closed.num().is_zero()) {
    return {kPenaltyBase, true, std::nullopt};  // no forward path at all
  }

  // stability gate before any simulation
  double margin = 0.0;
  bool stable = true;
  for (const auto& pole : poly_roots(closed.den())) {
    if (pole.real() >= 0.0) {
      stable = false;
      margin += std::max(0.0, pole.real());
    }
  }
  if (!stable) {
    return {kPenaltyBase + margin, true, std::nullopt};
  }

  StepResponse response;
  try {
    response = step_response(tf_to_state_space(closed), spec.grid);
  } catch (const SimulationOverflowError&) {
    return {kPenaltyBase, true, std::nullopt};
  }

  std::optional<TransientMetrics> metrics;
  try {
    metrics = transient_metrics(response);
  } catch (const Error&) {
    metrics = std::nullopt;
  }

  switch (spec.kind) {
    case ObjectiveKind::Iae:
    case ObjectiveKind::Itae:
    case ObjectiveKind::Ise:
    case ObjectiveKind::Itse:
    case ObjectiveKind::Rmse:
      return {integral_index(spec.kind, response, spec.literal_rmse), false,
              metrics};
    case ObjectiveKind::Zlg: {
      if (!metrics) return {kPenaltyBase, true, std::nullopt};
      return {zlg(*metrics, spec.beta), false, metrics};
    }
    case ObjectiveKind::Combined: {
      if (!metrics) return {kPenaltyBase, true, std::nullopt};
      const double itse = integral_index(ObjectiveKind::Itse, response);
      return {combined_j(itse, zlg(*metrics, spec.beta), spec.mu), false,
              metrics};
    }
    case ObjectiveKind::Of1:
    case ObjectiveKind::Of2:
    case ObjectiveKind::Of3:
    case ObjectiveKind::Of4: {
      if (!metrics) return {kPenaltyBase, true, std::nullopt};
      const double index = integral_index(index_for(spec.kind), response);
      return {weighted_of(spec.kind, index, metrics->ts,
                          metrics->mp_pct / 100.0, spec.w1, spec.w2, spec.w3),
              false, metrics};
    }
  }
  throw Error("unreachable objective kind");
}

}  // namespace avrpid
