// Acceptance suite: every reproduction target runs at its stated tolerance
// and prints exactly one [PASS]/[FAIL] line.
// argv: <data-dir> <scratch-dir>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "avrpid/avr.hpp"
#include "avrpid/bench.hpp"
#include "avrpid/metrics.hpp"
#include "avrpid/objectives.hpp"
#include "avrpid/simulate.hpp"
#include "avrpid/state_space.hpp"
#include "avrpid/tuners.hpp"

using namespace avrpid;

namespace {

std::string g_data;
std::string g_scratch;

struct Criterion {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "    FAILED: " << what << "\n";
    }
  }
  void note(const std::string& text) { detail << "    " << text << "\n"; }
};

bool within_rel(double computed, double target, double rel) {
  return std::abs(computed - target) <= rel * std::abs(target);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double nearest_distance(const std::vector<std::complex<double>>& poles,
                        std::complex<double> target) {
  double best = 1e300;
  for (const auto& p : poles) best = std::min(best, std::abs(p - target));
  return best;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------- criteria

// open-loop pole-zero locations against the published table
Criterion criterion_1() {
  Criterion c;
  const TransferFunction cl = avr_closed_loop(AvrParams{});
  const PoleZeroReport pz = pole_zero_report(cl);

  c.expect(nearest_distance(pz.poles, {-0.5285, 4.6649}) <= 0.05,
           "dominant pole not within 0.05 of -0.5285+4.6649i");
  c.expect(nearest_distance(pz.poles, {-0.5285, -4.6649}) <= 0.05,
           "dominant pole not within 0.05 of -0.5285-4.6649i");
  c.expect(nearest_distance(pz.poles, {-12.4626, 0.0}) <= 0.15,
           "middle real pole not within 0.15 of -12.4626");
  c.expect(pz.zeros.size() == 1 &&
               pz.zeros[0] == std::complex<double>(-100.0, 0.0),
           "zero is not exactly -100");

  double far = 0.0;
  for (const auto& p : pz.poles) far = std::min(far, p.real());
  c.expect(std::abs(far - (-99.9712)) < 0.5,
           "largest real pole not near the polynomial's own -99.97");
  c.note("largest real pole " + num(far) +
         " from the coefficients; the published -98.817 disagrees with the "
         "sum-of-roots check -0.0454/0.0004 = -113.5 by ~1% (paper "
         "discrepancy)");
  return c;
}

// open-loop transient row
Criterion criterion_2() {
  Criterion c;
  const StepResponse r = step_response(
      tf_to_state_space(avr_closed_loop(AvrParams{})), bench_grid());
  const TransientMetrics m = transient_metrics(r);

  c.expect(within_rel(m.peak_value, 1.5037, 0.01),
           "peak " + num(m.peak_value) + " vs 1.5037 (1%)");
  c.expect(std::abs(m.mp_pct - 65.4272) <= 1.5,
           "overshoot " + num(m.mp_pct) + " vs 65.4272 (1.5 pts)");
  c.expect(within_rel(m.tp, 0.7547, 0.03),
           "peak time " + num(m.tp) + " vs 0.7547 (3%)");
  c.expect(within_rel(m.ts, 6.9711, 0.03),
           "settling " + num(m.ts) + " vs 6.9711 (3%)");
  c.expect(m.ess >= 0.0902 && m.ess <= 0.0914,
           "ess " + num(m.ess) + " outside [0.0902, 0.0914]");

  TransientOptions full;
  full.rise_def = RiseTimeDef::ZeroToHundred;
  const double tr_full = transient_metrics(r, full).tr;
  const bool ten_ninety_closer =
      std::abs(m.tr - 0.2607) <= std::abs(tr_full - 0.2607);
  const double best_tr = ten_ninety_closer ? m.tr : tr_full;
  c.expect(within_rel(best_tr, 0.2607, 0.10),
           "rise time " + num(best_tr) + " vs 0.2607 (10%)");
  c.note(std::string("rise-time definition: ") +
         (ten_ninety_closer ? "10-90%" : "0-100%") + " of final value (" +
         num(best_tr) + " s)");
  return c;
}

// classical tuning pipeline
Criterion criterion_3() {
  Criterion c;
  const PidGains zn = ziegler_nichols(AvrParams{});
  c.expect(within_rel(zn.kp, 1.0210, 0.05), "kp " + num(zn.kp) + " vs 1.0210");
  c.expect(within_rel(zn.ki, 1.8743, 0.05), "ki " + num(zn.ki) + " vs 1.8743");
  c.expect(within_rel(zn.kd, 0.1390, 0.05), "kd " + num(zn.kd) + " vs 0.1390");
  c.note("tuned gains (" + num(zn.kp) + ", " + num(zn.ki) + ", " + num(zn.kd) +
         ")");

  const PidGains quoted{1.0210, 1.8743, 0.1390};
  const TransientMetrics m = transient_metrics(step_response(
      tf_to_state_space(avr_pid_closed_loop(AvrParams{}, quoted)),
      bench_grid()));
  c.expect(within_rel(m.peak_value, 1.515, 0.01),
           "peak " + num(m.peak_value) + " vs 1.515 (1%)");
  c.expect(within_rel(m.ts, 3.0516, 0.05),
           "settling " + num(m.ts) + " vs 3.0516 (5%)");
  c.expect(m.ess < 1e-3,
           "ess " + num(m.ess) + " not < 1e-3 (published 0.0453 is a paper "
           "inconsistency, integral action zeroes the step error)");
  return c;
}

// published-row reproduction
Criterion criterion_4() {
  Criterion c;
  const auto entries = load_reference_table(g_data + "/reference_table.json");
  const Tolerances tol = load_tolerances(g_data + "/tolerances.json");

  for (const char* name : {"PSO", "ABC", "DE", "SFS", "TSA"}) {
    const auto it =
        std::find_if(entries.begin(), entries.end(),
                     [&](const ReferenceEntry& e) { return e.algorithm == name; });
    if (it == entries.end()) {
      c.expect(false, std::string("row missing: ") + name);
      continue;
    }
    const ComparisonRow row = reproduce_entry(*it, AvrParams{}, tol);
    c.expect(row.stable, std::string(name) + " closed loop unstable");
    for (const char* metric : {"peak_pu", "tp_s", "ts_s", "tr_s"}) {
      const auto cmp = std::find_if(
          row.comparisons.begin(), row.comparisons.end(),
          [&](const MetricComparison& x) { return x.metric == metric; });
      if (cmp == row.comparisons.end()) {
        c.expect(false, std::string(name) + " missing comparison " + metric);
        continue;
      }
      c.expect(cmp->pass, std::string(name) + " " + metric + ": computed " +
                              num(cmp->computed) + " vs published " +
                              num(cmp->published) + " (tol " +
                              num(cmp->tolerance) +
                              (cmp->relative ? " rel)" : " abs)"));
    }
    c.note(std::string(name) + ": settling band " + row.ts_band +
           ", rise definition " + row.tr_def);
  }

  // the swarm row additionally pins poles and frequency metrics
  const auto pso = std::find_if(
      entries.begin(), entries.end(),
      [](const ReferenceEntry& e) { return e.algorithm == "PSO"; });
  const ComparisonRow row = reproduce_entry(*pso, AvrParams{}, tol);
  if (!row.pole_comparison) {
    c.expect(false, "PSO pole comparison missing");
  } else {
    c.expect(row.pole_comparison->pass,
             "PSO poles beyond 2% rel (0.05 abs for the dominant pole)");
    double worst = 0.0;
    for (double d : row.pole_comparison->rel_deltas) worst = std::max(worst, d);
    c.note("PSO worst pole deviation " + num(100.0 * worst) +
           "% (dominant pole compared at 0.05 absolute)");
  }
  c.expect(std::abs(row.freq->phase_margin_deg - 62.2) <= 2.0,
           "PSO phase margin " + num(row.freq->phase_margin_deg) +
               " vs 62.2 (2 deg)");
  c.expect(std::abs(row.freq->delay_margin_s - 0.103) <= 0.01,
           "PSO delay margin " + num(row.freq->delay_margin_s) +
               " vs 0.103 (0.01 s)");
  c.expect(std::abs(row.freq->peak_gain_db - 3.75) <= 0.5,
           "PSO peak gain " + num(row.freq->peak_gain_db) + " vs 3.75 (0.5 dB)");
  return c;
}

// internal delay-margin identity plus the implied crossover
Criterion criterion_5() {
  Criterion c;
  const auto entries = load_reference_table(g_data + "/reference_table.json");
  const Tolerances tol = load_tolerances(g_data + "/tolerances.json");
  const ComparisonReport report = reproduce_table(entries, AvrParams{}, tol);

  std::size_t checked = 0;
  for (const auto& row : report.rows) {
    if (!row.freq || !row.stable) continue;
    const FrequencyMetrics& f = *row.freq;
    if (!std::isfinite(f.delay_margin_s) || !std::isfinite(f.gain_crossover) ||
        f.gain_crossover == 0.0) {
      continue;
    }
    ++checked;
    const double identity =
        std::abs(f.delay_margin_s * f.gain_crossover -
                 f.phase_margin_deg * M_PI / 180.0);
    c.expect(identity <= 1e-9, row.algorithm + " delay-margin identity off by " +
                                   num(identity));
  }
  c.expect(checked >= 5, "expected at least five rows with finite margins");
  c.note(num(static_cast<double>(checked)) +
         " rows with finite margins satisfy dm * wgc = pm (1e-9)");

  // published PSO numbers imply wgc = PM_rad / DM = 10.54 rad/s
  const auto pso = std::find_if(
      report.rows.begin(), report.rows.end(),
      [](const ComparisonRow& r) { return r.algorithm == "PSO"; });
  const double implied = (62.2 * M_PI / 180.0) / 0.103;
  c.expect(within_rel(pso->freq->gain_crossover, implied, 0.05),
           "PSO crossover " + num(pso->freq->gain_crossover) +
               " not within 5% of the implied " + num(implied));
  c.note("PSO crossover " + num(pso->freq->gain_crossover) + " rad/s, implied " +
         num(implied) + " rad/s");
  return c;
}

// optimizer dominance over the published gains
Criterion criterion_6() {
  Criterion c;
  ObjectiveSpec spec;  // ITSE on the default 10 s / 1 ms grid

  struct Target {
    Algorithm algorithm;
    const char* name;
    PidGains published;
  };
  const std::vector<Target> targets{
      {Algorithm::Pso, "PSO", {1.7774, 0.3827, 0.3184}},
      {Algorithm::De, "DE", {1.9499, 0.4430, 0.3427}},
      {Algorithm::Goa, "GOA", {1.3825, 1.4608, 0.5462}},
  };

  const ObjectiveFn objective = [&](const std::vector<double>& x) {
    return evaluate_gains(AvrParams{}, {x[0], x[1], x[2]}, spec).value;
  };

  for (const auto& target : targets) {
    const double published_value =
        evaluate_gains(AvrParams{}, target.published, spec).value;
    std::size_t wins = 0;
    double slowest = 0.0;
    double best_seen = 1e300;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      OptimizerConfig cfg;
      cfg.algorithm = target.algorithm;
      cfg.population = 50;
      cfg.iterations = 100;
      cfg.seed = seed;
      const auto start = std::chrono::steady_clock::now();
      const OptimizerResult result =
          optimize(objective, Bounds::pid_default(), cfg);
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      slowest = std::max(slowest, elapsed);
      best_seen = std::min(best_seen, result.best_value);
      if (result.best_value <= published_value) ++wins;
      c.expect(elapsed < 20.0, std::string(target.name) + " seed " +
                                   std::to_string(seed) + " took " +
                                   num(elapsed) + " s (budget 20 s)");
    }
    c.expect(wins >= 4, std::string(target.name) + " dominated in only " +
                            std::to_string(wins) + "/5 seeds");
    c.note(std::string(target.name) + ": " + std::to_string(wins) +
           "/5 seeds at or below the published ITSE " + num(published_value) +
           " (best " + num(best_seen) + ", slowest run " + num(slowest) + " s)");
  }
  return c;
}

// analytic objective-function suite at 1e-6
Criterion criterion_7() {
  Criterion c;
  auto make = [](double dt, double horizon, auto error) {
    StepResponse r;
    r.grid = {dt, horizon};
    r.v.resize(r.grid.n_samples());
    for (std::size_t k = 0; k < r.v.size(); ++k) {
      r.v[k] = 1.0 - error(r.grid.time_at(k));
    }
    return r;
  };

  const StepResponse constant = make(1e-3, 2.0, [](double) { return 1.0; });
  c.expect(std::abs(integral_index(ObjectiveKind::Iae, constant) - 2.0) < 1e-6,
           "IAE of unit error on [0,2]");
  c.expect(std::abs(integral_index(ObjectiveKind::Itae, constant) - 2.0) < 1e-6,
           "ITAE of unit error on [0,2]");
  c.expect(std::abs(integral_index(ObjectiveKind::Ise, constant) - 2.0) < 1e-6,
           "ISE of unit error on [0,2]");
  c.expect(std::abs(integral_index(ObjectiveKind::Itse, constant) - 2.0) < 1e-6,
           "ITSE of unit error on [0,2]");
  c.expect(std::abs(integral_index(ObjectiveKind::Rmse, constant) - 1.0) < 1e-6,
           "RMSE of unit error on [0,2]");

  const StepResponse decay =
      make(1e-3, 10.0, [](double t) { return std::exp(-t); });
  c.expect(std::abs(integral_index(ObjectiveKind::Ise, decay) -
                    0.5 * (1.0 - std::exp(-20.0))) < 1e-6,
           "ISE of e^-t on [0,10] vs 1/2");

  StepResponse scaled = decay;
  const double alpha = 3.0;
  for (std::size_t k = 0; k < scaled.v.size(); ++k) {
    scaled.v[k] = 1.0 - alpha * (1.0 - decay.v[k]);
  }
  c.expect(std::abs(integral_index(ObjectiveKind::Iae, scaled) -
                    alpha * integral_index(ObjectiveKind::Iae, decay)) < 1e-6,
           "IAE scales by alpha");
  c.expect(std::abs(integral_index(ObjectiveKind::Itae, scaled) -
                    alpha * integral_index(ObjectiveKind::Itae, decay)) < 1e-6,
           "ITAE scales by alpha");
  c.expect(std::abs(integral_index(ObjectiveKind::Ise, scaled) -
                    alpha * alpha * integral_index(ObjectiveKind::Ise, decay)) <
               1e-6,
           "ISE scales by alpha^2");
  c.expect(
      std::abs(integral_index(ObjectiveKind::Itse, scaled) -
               alpha * alpha * integral_index(ObjectiveKind::Itse, decay)) <
          1e-6,
      "ITSE scales by alpha^2");
  c.expect(std::abs(integral_index(ObjectiveKind::Rmse, scaled) -
                    alpha * integral_index(ObjectiveKind::Rmse, decay)) < 1e-6,
           "RMSE scales by alpha");
  return c;
}

// robustness sweep protocol
Criterion criterion_8() {
  Criterion c;
  const PidGains tsa{1.1281, 0.9567, 0.5671};
  const auto rows = robustness_sweep(AvrParams{}, tsa, SweepSpec{});
  c.expect(rows.size() == 17, "expected 17 rows, got " +
                                  std::to_string(rows.size()));
  std::size_t stable = 0;
  for (const auto& row : rows) stable += row.stable ? 1 : 0;
  c.expect(stable == rows.size(), "only " + std::to_string(stable) +
                                      "/17 cases stable");

  const std::string p1 = g_scratch + "/acceptance_sweep_1.csv";
  const std::string p2 = g_scratch + "/acceptance_sweep_2.csv";
  write_sweep_csv(rows, p1);
  write_sweep_csv(robustness_sweep(AvrParams{}, tsa, SweepSpec{}), p2);
  c.expect(slurp(p1) == slurp(p2), "repeat sweep runs are not byte-identical");
  c.note("17 rows (4 time constants x {-50%,-25%,+25%,+50%} + nominal), all "
         "stable, CSV byte-identical across runs");
  std::remove(p1.c_str());
  std::remove(p2.c_str());
  return c;
}

// simulator exactness
Criterion criterion_9() {
  Criterion c;
  const auto first =
      tf_to_state_space({Polynomial{1.0}, Polynomial{1.0, 1.0}});
  const StepResponse r = step_response(first, {1e-3, 10.0});
  double worst = 0.0;
  for (std::size_t k = 0; k < r.v.size(); ++k) {
    worst = std::max(worst,
                     std::abs(r.v[k] - (1.0 - std::exp(-r.grid.time_at(k)))));
  }
  c.expect(worst < 1e-9, "first-order deviation " + num(worst));
  c.note("max first-order deviation " + num(worst));

  const auto plant = tf_to_state_space(avr_closed_loop(AvrParams{}));
  auto peak_at = [&](double dt) {
    const StepResponse s = step_response(plant, {dt, 10.0});
    double peak = 0.0;
    for (double v : s.v) peak = std::max(peak, v);
    return peak;
  };
  const double change = std::abs(peak_at(1e-3) - peak_at(5e-4));
  c.expect(change < 1e-4, "grid halving moved the peak by " + num(change));
  c.note("grid halving changes the nominal peak by " + num(change) + " p.u.");
  return c;
}

// disturbance protocol
Criterion criterion_10() {
  Criterion c;
  const PidGains tsa{1.1281, 0.9567, 0.5671};
  const StepResponse r = scenario_response(
      AvrParams{}, tsa, {{3.0, 0.10}, {5.0, 0.10}}, {1e-3, 8.0});

  auto reentry = [&](double from, double to) {
    double last_outside = from;
    bool outside_seen = false;
    for (std::size_t k = 0; k < r.v.size(); ++k) {
      const double t = r.grid.time_at(k);
      if (t < from || t >= to) continue;
      if (std::abs(r.v[k] - 1.0) > 0.02) {
        last_outside = t;
        outside_seen = true;
      }
    }
    return outside_seen ? last_outside : from;
  };

  const double back_1 = reentry(3.0, 5.0);
  const double back_2 = reentry(5.0, 8.0);
  c.expect(back_1 < 5.0 - r.grid.dt,
           "voltage still outside the band at the 5 s event");
  c.expect(back_2 < 8.0 - r.grid.dt,
           "voltage still outside the band at the horizon end");
  const bool in_band_at_end = std::abs(r.v.back() - 1.0) <= 0.02;
  c.expect(in_band_at_end, "final sample outside the 2% band");

  double dev1 = 0.0, dev2 = 0.0;
  for (std::size_t k = 0; k < r.v.size(); ++k) {
    const double t = r.grid.time_at(k);
    if (t >= 3.0 && t < 5.0) dev1 = std::max(dev1, std::abs(r.v[k] - 1.0));
    if (t >= 5.0) dev2 = std::max(dev2, std::abs(r.v[k] - 1.0));
  }
  c.note("peak deviation " + num(dev1) + " p.u. after the 3 s event, " +
         num(dev2) + " p.u. after the 5 s event; band re-entered at " +
         num(back_1) + " s and " + num(back_2) + " s");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  g_data = argc > 1 ? argv[1] : "data";
  g_scratch = argc > 2 ? argv[2] : ".";

  struct Entry {
    const char* description;
    Criterion (*run)();
  };
  const std::vector<Entry> criteria{
      {"open-loop pole-zero locations", criterion_1},
      {"open-loop transient metrics", criterion_2},
      {"classical tuning pipeline", criterion_3},
      {"published-row reproduction (PSO, ABC, DE, SFS, TSA)", criterion_4},
      {"delay-margin identity and implied crossover", criterion_5},
      {"optimizer dominance over published gains", criterion_6},
      {"objective-function analytic suite", criterion_7},
      {"robustness sweep protocol", criterion_8},
      {"simulator exactness", criterion_9},
      {"disturbance rejection protocol", criterion_10},
  };

  std::size_t passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion result;
    try {
      result = criteria[i].run();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail << "    exception: " << e.what() << "\n";
    }
    std::cout << (result.pass ? "[PASS]" : "[FAIL]") << " criterion " << i + 1
              << ": " << criteria[i].description << "\n"
              << result.detail.str();
    passed += result.pass ? 1 : 0;
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed\n";
  return passed == criteria.size() ? 0 : 1;
}
