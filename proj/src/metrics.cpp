#include "avrpid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "avrpid/errors.hpp"
#include "avrpid/polynomial.hpp"

namespace avrpid {

namespace {

double interp_time(double t0, double t1, double v0, double v1, double level) {
  return t0 + (t1 - t0) * (level - v0) / (v1 - v0);
}

// first time v crosses `level` from below, linearly interpolated
std::optional<double> first_crossing(const StepResponse& r, double level) {
  const auto& v = r.v;
  if (v[0] >= level) return r.grid.time_at(0);
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] >= level) {
      return interp_time(r.grid.time_at(k - 1), r.grid.time_at(k), v[k - 1],
                         v[k], level);
    }
  }
  return std::nullopt;
}

}  // namespace

TransientMetrics transient_metrics(const StepResponse& r,
                                   const TransientOptions& opt) {
  const auto& v = r.v;
  const std::size_t n = v.size();
  if (n < 4) {
    throw InvalidParameterError("response too short for transient metrics");
  }

  const std::size_t final_count = std::max<std::size_t>(1, n / 100);
  const double final_value =
      std::accumulate(v.end() - static_cast<std::ptrdiff_t>(final_count),
                      v.end(), 0.0) /
      static_cast<double>(final_count);
  if (!(final_value > 0.0)) {
    throw InvalidParameterError("non-positive final value");
  }

  const std::size_t tail_count = std::max<std::size_t>(
      2, static_cast<std::size_t>(
             std::ceil(opt.settled_window * static_cast<double>(n))));
  const auto tail_begin = v.end() - static_cast<std::ptrdiff_t>(tail_count);
  const auto [mn, mx] = std::minmax_element(tail_begin, v.end());
  if (*mx - *mn >= opt.settled_tolerance * std::abs(final_value)) {
    std::ostringstream msg;
    msg << "response not settled: last " << tail_count << " samples vary by "
        << (*mx - *mn) << " (allowed "
        << opt.settled_tolerance * std::abs(final_value) << ")";
    throw UnsettledError(msg.str());
  }

  TransientMetrics m;
  m.final_value = final_value;
  m.rise_def = opt.rise_def;

  const auto peak_it = std::max_element(v.begin(), v.end());
  m.peak_value = *peak_it;
  m.tp = r.grid.time_at(static_cast<std::size_t>(peak_it - v.begin()));
  m.mp_pct = 100.0 * (m.peak_value - final_value) / final_value;
  m.ess = std::abs(r.reference - final_value);

  // settling time: last instant the signal exits the band around final value
  const double band = opt.settle_band * std::abs(final_value);
  m.ts = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    if (std::abs(v[k] - final_value) > band) {
      if (k + 1 >= n) {
        m.ts = r.grid.time_at(n - 1);
      } else {
        const double edge = v[k] > final_value ? final_value + band
                                               : final_value - band;
        m.ts = interp_time(r.grid.time_at(k), r.grid.time_at(k + 1), v[k],
                           v[k + 1], edge);
      }
      break;
    }
  }

  if (opt.rise_def == RiseTimeDef::TenToNinety) {
    const auto t10 = first_crossing(r, 0.1 * final_value);
    const auto t90 = first_crossing(r, 0.9 * final_value);
    if (!t10 || !t90) {
      throw UnsettledError("response never reaches 90% of its final value");
    }
    m.tr = *t90 - *t10;
  } else {
    const auto t100 = first_crossing(r, final_value);
    if (!t100) {
      throw UnsettledError("response never reaches its final value");
    }
    m.tr = *t100;
  }
  return m;
}

PoleZeroReport pole_zero_report(const TransferFunction& tf) {
  if (!tf.proper()) {
    throw ImproperSystemError("pole-zero report needs a proper system");
  }
  if (tf.den().degree() < 1) {
    throw InvalidParameterError("denominator must have degree >= 1");
  }
  PoleZeroReport report;
  report.poles = poly_roots(tf.den());
  if (!tf.num().is_zero() && tf.num().degree() >= 1) {
    report.zeros = poly_roots(tf.num());
  }

  // conjugates adjacent, most negative real part first
  auto order = [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() > b.imag();
  };
  std::sort(report.poles.begin(), report.poles.end(), order);
  std::sort(report.zeros.begin(), report.zeros.end(), order);

  report.damping.reserve(report.poles.size());
  report.stable = true;
  for (const auto& p : report.poles) {
    const double mag = std::abs(p);
    report.damping.push_back(mag > 0.0 ? -p.real() / mag : 0.0);
    if (!(p.real() < 0.0)) report.stable = false;
  }
  return report;
}

namespace {

double mag_at(const TransferFunction& tf, double omega) {
  return std::abs(tf(std::complex<double>(0.0, omega)));
}

// multiplicative bisection on |tf(jw)| - level
double refine_crossing(const TransferFunction& tf, double lo, double hi,
                       double level, bool falling) {
  for (int it = 0; it < 200 && (hi - lo) > 1e-6 * lo; ++it) {
    const double mid = std::sqrt(lo * hi);
    const bool above = mag_at(tf, mid) >= level;
    if (above == falling) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo * hi);
}

}  // namespace

FrequencyMetrics frequency_metrics(const TransferFunction& loop,
                                   const TransferFunction& closed,
                                   const FrequencyOptions& opt) {
  if (opt.points < 8 || !(opt.omega_min > 0.0) ||
      !(opt.omega_max > opt.omega_min)) {
    throw InvalidParameterError("bad frequency scan options");
  }
  const std::size_t n = opt.points;
  const double log_lo = std::log10(opt.omega_min);
  const double log_hi = std::log10(opt.omega_max);

  std::vector<double> omega(n), loop_mag(n), loop_phase(n), closed_mag(n);
  std::complex<double> prev_l;
  for (std::size_t i = 0; i < n; ++i) {
    omega[i] = std::pow(10.0, log_lo + (log_hi - log_lo) *
                                  static_cast<double>(i) /
                                  static_cast<double>(n - 1));
    const std::complex<double> s(0.0, omega[i]);
    const std::complex<double> l = loop(s);
    loop_mag[i] = std::abs(l);
    // unwrap by accumulating principal-branch increments
    loop_phase[i] = i == 0 ? std::arg(l) : loop_phase[i - 1] + std::arg(l / prev_l);
    prev_l = l;
    closed_mag[i] = std::abs(closed(s));
  }

  FrequencyMetrics out;
  constexpr double inf = std::numeric_limits<double>::infinity();

  // first gain crossover of the loop
  std::optional<std::size_t> cross;
  for (std::size_t i = 1; i < n; ++i) {
    if ((loop_mag[i - 1] >= 1.0) && (loop_mag[i] < 1.0)) {
      cross = i;
      break;
    }
  }
  if (cross) {
    const double wgc =
        refine_crossing(loop, omega[*cross - 1], omega[*cross], 1.0, true);
    const std::complex<double> at_gc = loop(std::complex<double>(0.0, wgc));
    const std::complex<double> at_anchor =
        loop(std::complex<double>(0.0, omega[*cross - 1]));
    const double phase_gc = loop_phase[*cross - 1] + std::arg(at_gc / at_anchor);
    out.gain_crossover = wgc;
    out.phase_margin_deg = 180.0 + phase_gc * 180.0 / M_PI;
    out.delay_margin_s = (out.phase_margin_deg * M_PI / 180.0) / wgc;
  } else if (loop_mag[0] >= 1.0 ||
             std::abs(loop(std::complex<double>(0.0, 0.0))) >= 1.0) {
    // crossover sits at (or below) DC: the limit gives 180 degrees of margin
    out.gain_crossover = 0.0;
    out.phase_margin_deg = 180.0;
    out.delay_margin_s = inf;
  } else {
    out.gain_crossover = std::numeric_limits<double>::quiet_NaN();
    out.phase_margin_deg = inf;
    out.delay_margin_s = inf;
  }

  // closed-loop resonance peak, golden-section refined around the scan max
  const double dc = std::abs(closed(std::complex<double>(0.0, 0.0)));
  const std::size_t arg_max = static_cast<std::size_t>(
      std::max_element(closed_mag.begin(), closed_mag.end()) -
      closed_mag.begin());
  double peak = std::max(dc, closed_mag[arg_max]);
  {
    double a = omega[arg_max > 0 ? arg_max - 1 : 0];
    double b = omega[std::min(arg_max + 1, n - 1)];
    constexpr double gr = 0.6180339887498949;
    while ((b - a) > 1e-9 * a) {
      const double c1 = b - gr * (b - a);
      const double c2 = a + gr * (b - a);
      if (mag_at(closed, c1) > mag_at(closed, c2)) {
        b = c2;
      } else {
        a = c1;
      }
    }
    peak = std::max(peak, mag_at(closed, 0.5 * (a + b)));
  }
  out.peak_gain_db = 20.0 * std::log10(peak);

  // bandwidth: first drop 3 dB below DC
  const double threshold = dc * std::pow(10.0, -3.0 / 20.0);
  out.bandwidth = inf;
  if (closed_mag[0] < threshold) {
    out.bandwidth = refine_crossing(closed, omega[0] * 1e-6, omega[0],
                                    threshold, true);
  } else {
    for (std::size_t i = 1; i < n; ++i) {
      if (closed_mag[i - 1] >= threshold && closed_mag[i] < threshold) {
        out.bandwidth =
            refine_crossing(closed, omega[i - 1], omega[i], threshold, true);
        break;
      }
    }
  }
  return out;
}

}  // namespace avrpid
