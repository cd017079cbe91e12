#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avrpid/avr.hpp"
#include "avrpid/state_space.hpp"

namespace avrpid {

/// Uniform time grid t_k = k * dt, k = 0 .. n_samples()-1.
struct SimGrid {
  double dt = 1e-3;
  double horizon = 10.0;

  std::size_t n_samples() const;
  double time_at(std::size_t k) const { return static_cast<double>(k) * dt; }
  void validate() const;

  bool operator==(const SimGrid&) const = default;
};

/// Terminal-voltage trajectory against a constant reference (p.u.).
struct StepResponse {
  SimGrid grid;
  std::vector<double> v;
  double reference = 1.0;
};

/// Persistent additive offset applied from `time` onward.
struct DisturbanceEvent {
  double time = 0.0;       // s
  double magnitude = 0.1;  // p.u.
};

/// Exact zero-order-hold step response: x_{k+1} = Phi x_k + Gamma u with a
/// constant input u = amplitude. Throws SimulationOverflowError with the
/// first bad sample index if the state leaves the finite range.
StepResponse step_response(const StateSpaceModel& ss, const SimGrid& grid,
                           double amplitude = 1.0);

/// Unit reference step plus load-disturbance events injected at the generator
/// input, simulated as one two-input state-space system. Without gains the
/// loop is the plain (controller-free) AVR. The closed loop must be strictly
/// stable; events must be sorted by time and lie inside the horizon.
StepResponse scenario_response(const AvrParams& p,
                               const std::optional<PidGains>& g,
                               const std::vector<DisturbanceEvent>& events,
                               const SimGrid& grid);

/// Two-column `t,v` CSV, full double precision.
void write_response_csv(const StepResponse& r, const std::string& path);
StepResponse read_response_csv(const std::string& path, double reference = 1.0);

}  // namespace avrpid
