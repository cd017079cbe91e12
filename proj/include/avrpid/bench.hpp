#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "avrpid/avr.hpp"
#include "avrpid/metrics.hpp"
#include "avrpid/simulate.hpp"

namespace avrpid {

/// One transcribed row of the published gain/metric table. Missing cells stay
/// absent, never zero.
struct ReferenceEntry {
  std::string algorithm;
  std::string objective;
  std::optional<PidGains> gains;

  struct Published {
    std::optional<double> peak_pu;
    std::optional<double> tp_s;
    std::optional<double> mp_pct;
    std::optional<double> tr_s;
    std::optional<double> ts_s;
    std::optional<double> ess;
    std::optional<double> pm_deg;
    std::optional<double> dm_s;  // infinity allowed ("Inf." rows)
    std::optional<double> peak_gain_db;
    std::optional<double> bw;  // treated as rad/s
    std::vector<std::complex<double>> poles;
    std::vector<double> damping;
  } published;

  std::string note;

  bool has_gains() const { return gains.has_value(); }
};

/// Parses the JSON reference table; schema errors carry row index and field.
std::vector<ReferenceEntry> load_reference_table(const std::string& path);

/// Per-metric pass bands. Data, not code: shipped as tolerances.json and
/// echoed into every report row.
struct Tolerances {
  double peak_rel = 0.01;
  double tp_rel = 0.05;
  double ts_rel = 0.10;
  double tr_rel = 0.10;
  double mp_abs_pts = 2.0;
  double ess_abs = 0.01;
  double pole_rel = 0.02;
  double pole_dominant_abs = 0.05;
  double pm_abs_deg = 2.0;
  double dm_abs_s = 0.01;
  double peak_gain_abs_db = 0.5;
  double bw_rel = 0.10;
};

Tolerances load_tolerances(const std::string& path);

struct MetricComparison {
  std::string metric;
  double computed = 0.0;
  double published = 0.0;
  double abs_delta = 0.0;
  double rel_delta = 0.0;
  double tolerance = 0.0;
  bool relative = true;  // tolerance mode
  bool pass = false;
};

struct PoleComparison {
  // one entry per published pole, matched to the nearest computed pole
  std::vector<double> rel_deltas;
  std::vector<double> abs_deltas;
  double tolerance_rel = 0.0;
  double tolerance_dominant_abs = 0.0;
  bool pass = false;
};

struct ComparisonRow {
  std::string algorithm;
  std::string objective;
  std::optional<PidGains> gains;
  bool stable = false;
  std::optional<TransientMetrics> metrics;  // 2% settle band
  std::optional<double> ts_5pct;            // 5% settle band alternative
  std::optional<double> tr_0_100;
  std::optional<FrequencyMetrics> freq;  // margins from the closed-loop TF
  std::vector<std::complex<double>> poles;
  std::vector<double> damping;
  std::vector<MetricComparison> comparisons;
  std::optional<PoleComparison> pole_comparison;
  std::string ts_band = "2%";     // band that matched the published Ts
  std::string tr_def = "10-90%";  // rise definition that matched
  bool paper_consistent = true;   // all present comparisons passed
  std::string note;
};

struct ComparisonReport {
  SimGrid grid;
  Tolerances tolerances;
  std::vector<ComparisonRow> rows;
};

/// Metric-extraction grid; long enough that slow closed-loop poles
/// (tau ~ 4.6 s in several published rows) have decayed from the tail.
inline SimGrid bench_grid() { return SimGrid{1e-3, 30.0}; }

/// Simulates the entry's gains on the given plant, extracts transient, pole
/// and frequency metrics, and diffs each published value. Published Ts and Tr
/// are accepted under whichever conventional definition matches closer
/// (2%/5% band, 10-90%/0-100%), recorded in the row. Unstable gains are
/// reported as such, not thrown. The entry must have gains.
ComparisonRow reproduce_entry(const ReferenceEntry& e, const AvrParams& p,
                              const Tolerances& tol,
                              const SimGrid& grid = bench_grid());

/// Reproduces every entry with gains (others are listed with a note), in
/// table order; entries evaluate in parallel up to the AVRPID_THREADS cap.
ComparisonReport reproduce_table(const std::vector<ReferenceEntry>& entries,
                                 const AvrParams& p, const Tolerances& tol,
                                 const std::vector<std::string>& only = {},
                                 const SimGrid& grid = bench_grid());

enum class SweepParameter { AmplifierTc, ExciterTc, GeneratorTc, SensorTc };

const char* sweep_parameter_name(SweepParameter p);

struct SweepSpec {
  std::vector<SweepParameter> parameters{
      SweepParameter::AmplifierTc, SweepParameter::ExciterTc,
      SweepParameter::GeneratorTc, SweepParameter::SensorTc};
  std::vector<double> levels{-0.50, -0.25, 0.0, 0.25, 0.50};

  void validate() const;  // levels include 0 and keep time constants positive
};

struct SweepRow {
  std::string parameter;  // "nominal" or the perturbed time constant
  double level = 0.0;     // fractional offset
  bool stable = false;
  std::optional<TransientMetrics> metrics;
  std::vector<std::complex<double>> poles;  // filled for unstable rows
};

/// One row per perturbed (parameter, level) pair plus a single shared nominal
/// row first. Unstable cases carry their pole report instead of metrics.
std::vector<SweepRow> robustness_sweep(const AvrParams& p, const PidGains& g,
                                       const SweepSpec& spec,
                                       const SimGrid& grid = bench_grid());

/// RFC-4180 CSV and JSON emission with deterministic field order.
void write_report_csv(const ComparisonReport& report, const std::string& path);
void write_report_json(const ComparisonReport& report, const std::string& path);
ComparisonReport read_report_json(const std::string& path);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace avrpid
