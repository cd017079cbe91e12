#include "avrpid/avr.hpp"

#include <cmath>
#include <sstream>

#include "avrpid/errors.hpp"

namespace avrpid {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << name << " must be positive, got " << v;
    throw InvalidParameterError(msg.str());
  }
}

void check_range(std::vector<std::string>& out, double v, double lo, double hi,
                 const char* name) {
  if (v < lo || v > hi) {
    std::ostringstream msg;
    msg << name << " = " << v << " outside the published range [" << lo << ", "
        << hi << "]";
    out.push_back(msg.str());
  }
}

}  // namespace

void AvrParams::validate() const {
  require_positive(ka, "amplifier gain");
  require_positive(ta, "amplifier time constant");
  require_positive(ke, "exciter gain");
  require_positive(te, "exciter time constant");
  require_positive(kg, "generator gain");
  require_positive(tg, "generator time constant");
  require_positive(ks, "sensor gain");
  require_positive(ts, "sensor time constant");
}

std::vector<std::string> AvrParams::range_warnings() const {
  std::vector<std::string> out;
  check_range(out, ka, 10.0, 40.0, "amplifier gain");
  check_range(out, ta, 0.02, 0.1, "amplifier time constant");
  check_range(out, ke, 1.0, 10.0, "exciter gain");
  check_range(out, te, 0.5, 1.0, "exciter time constant");
  check_range(out, kg, 0.7, 1.0, "generator gain");
  check_range(out, tg, 1.0, 2.0, "generator time constant");
  check_range(out, ks, 1.0, 2.0, "sensor gain");
  check_range(out, ts, 0.001, 0.06, "sensor time constant");
  return out;
}

void PidGains::validate() const {
  for (auto [v, name] : {std::pair{kp, "kp"}, {ki, "ki"}, {kd, "kd"}}) {
    if (v < 0.0 || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << name << " must be nonnegative, got " << v;
      throw InvalidParameterError(msg.str());
    }
  }
}

double PidGains::integral_time() const {
  if (!(ki > 0.0)) {
    throw InvalidParameterError("integral time undefined for ki = 0");
  }
  return kp / ki;
}

double PidGains::derivative_time() const {
  if (!(kp > 0.0)) {
    throw InvalidParameterError("derivative time undefined for kp = 0");
  }
  return kd / kp;
}

TransferFunction block_tf(double gain, double time_constant) {
  require_positive(gain, "block gain");
  require_positive(time_constant, "block time constant");
  return {Polynomial{gain}, Polynomial{1.0, time_constant}};
}

TransferFunction pid_tf(const PidGains& g) {
  g.validate();
  return {Polynomial{g.ki, g.kp, g.kd}, Polynomial{0.0, 1.0}};
}

namespace {

TransferFunction forward_chain(const AvrParams& p) {
  return tf_series(tf_series(block_tf(p.ka, p.ta), block_tf(p.ke, p.te)),
                   block_tf(p.kg, p.tg));
}

}  // namespace

TransferFunction avr_closed_loop(const AvrParams& p) {
  p.validate();
  return tf_feedback(forward_chain(p), block_tf(p.ks, p.ts));
}

TransferFunction avr_pid_closed_loop(const AvrParams& p, const PidGains& g) {
  p.validate();
  return tf_feedback(tf_series(pid_tf(g), forward_chain(p)),
                     block_tf(p.ks, p.ts));
}

TransferFunction loop_tf(const AvrParams& p, const PidGains& g) {
  p.validate();
  return tf_series(tf_series(pid_tf(g), forward_chain(p)),
                   block_tf(p.ks, p.ts));
}

TransferFunction disturbance_closed_loop(const AvrParams& p,
                                         const std::optional<PidGains>& g) {
  p.validate();
  TransferFunction upstream =
      tf_series(block_tf(p.ka, p.ta), block_tf(p.ke, p.te));
  if (g) {
    upstream = tf_series(pid_tf(*g), upstream);
  }
  // Offset enters ahead of the generator; everything else closes the loop
  // around it.
  return tf_feedback(block_tf(p.kg, p.tg),
                     tf_series(upstream, block_tf(p.ks, p.ts)));
}

}  // namespace avrpid
