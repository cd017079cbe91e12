#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "avrpid/simulate.hpp"
#include "avrpid/transfer_function.hpp"

namespace avrpid {

enum class RiseTimeDef {
  TenToNinety,   // 10% -> 90% of final value
  ZeroToHundred  // first crossing of the final value
};

struct TransientOptions {
  RiseTimeDef rise_def = RiseTimeDef::TenToNinety;
  double settle_band = 0.02;        // fraction of final value
  double settled_window = 0.05;     // tail fraction inspected by the gate
  double settled_tolerance = 0.005; // max tail variation, fraction of final
};

struct TransientMetrics {
  double peak_value = 0.0;   // p.u.
  double mp_pct = 0.0;       // overshoot relative to final value, %
  double tp = 0.0;           // s
  double tr = 0.0;           // s
  double ts = 0.0;           // s, last exit of the settle band
  double ess = 0.0;          // |reference - final|, p.u.
  double final_value = 0.0;  // mean of the last 1% of samples
  RiseTimeDef rise_def = RiseTimeDef::TenToNinety;
};

/// Crossing times are interpolated linearly between samples. Throws
/// UnsettledError when the last 5% of samples still vary by more than the
/// settled tolerance, InvalidParameterError on a non-positive final value.
TransientMetrics transient_metrics(const StepResponse& r,
                                   const TransientOptions& opt = {});

struct PoleZeroReport {
  std::vector<std::complex<double>> poles;
  std::vector<std::complex<double>> zeros;
  std::vector<double> damping;  // -Re(p)/|p| per pole; 1.0 for negative reals
  bool stable = false;          // all Re(p) < 0
};

PoleZeroReport pole_zero_report(const TransferFunction& tf);

struct FrequencyOptions {
  double omega_min = 1e-2;  // rad/s
  double omega_max = 1e3;   // rad/s
  std::size_t points = 2000;
};

struct FrequencyMetrics {
  double peak_gain_db = 0.0;        // max closed-loop gain over the scan + DC
  double phase_margin_deg = 0.0;    // 180 + loop phase at |loop| = 1
  double gain_crossover = 0.0;      // rad/s; 0 at the DC limit, NaN if none
  double delay_margin_s = 0.0;      // PM in radians / gain crossover
  double bandwidth = 0.0;           // rad/s, first -3 dB drop from DC
};

/// Margins come from `loop`, peak gain and bandwidth from `closed`. Phase is
/// unwrapped along the log grid; the first gain crossover is refined by
/// bisection to 1e-6 relative. Without a crossover in the scan the margins
/// are the DC limit (PM 180 deg, infinite delay margin) when |loop| starts
/// at or above unity, otherwise fully infinite.
FrequencyMetrics frequency_metrics(const TransferFunction& loop,
                                   const TransferFunction& closed,
                                   const FrequencyOptions& opt = {});

}  // namespace avrpid
