#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avrpid/transfer_function.hpp"

namespace avrpid {

/// Gains and time constants of the four first-order AVR blocks.
/// Defaults are the nominal values (amplifier 10/0.1s, exciter 1/0.4s,
/// generator 1/1s, sensor 1/0.01s).
struct AvrParams {
  double ka = 10.0;  ///< amplifier gain
  double ta = 0.1;   ///< amplifier time constant, s
  double ke = 1.0;   ///< exciter gain
  double te = 0.4;   ///< exciter time constant, s
  double kg = 1.0;   ///< generator gain
  double tg = 1.0;   ///< generator time constant, s
  double ks = 1.0;   ///< sensor gain
  double ts = 0.01;  ///< sensor time constant, s

  /// Throws InvalidParameterError unless all eight values are positive.
  void validate() const;

  /// Opt-in textbook-range check. Returns one message per value outside its
  /// published range; never rejects (the nominal exciter time constant itself
  /// sits outside its stated range).
  std::vector<std::string> range_warnings() const;
};

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;

  /// Throws InvalidParameterError on negative or non-finite gains.
  void validate() const;

  double integral_time() const;    // kp/ki, needs ki > 0
  double derivative_time() const;  // kd/kp, needs kp > 0

  bool operator==(const PidGains&) const = default;
};

/// First-order block K/(1 + T s). K and T must be positive.
TransferFunction block_tf(double gain, double time_constant);

/// (kd s^2 + kp s + ki)/s, uncancelled.
TransferFunction pid_tf(const PidGains& gains);

/// Closed loop of amplifier-exciter-generator with sensor feedback
/// (terminal voltage over reference, no controller).
TransferFunction avr_closed_loop(const AvrParams& p);

/// Closed loop with the PID in the forward path.
TransferFunction avr_pid_closed_loop(const AvrParams& p, const PidGains& g);

/// Open-loop product PID * amplifier * exciter * generator * sensor.
TransferFunction loop_tf(const AvrParams& p, const PidGains& g);

/// Transfer from a constant offset injected at the generator input to the
/// terminal voltage, with or without the PID in the loop.
TransferFunction disturbance_closed_loop(const AvrParams& p,
                                         const std::optional<PidGains>& g);

}  // namespace avrpid
