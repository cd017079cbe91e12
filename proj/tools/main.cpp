// avrpid: simulate, measure, tune and benchmark the four-block AVR loop.
#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "avrpid/avr.hpp"
#include "avrpid/bench.hpp"
#include "avrpid/csv.hpp"
#include "avrpid/errors.hpp"
#include "avrpid/metrics.hpp"
#include "avrpid/objectives.hpp"
#include "avrpid/simulate.hpp"
#include "avrpid/state_space.hpp"
#include "avrpid/tuners.hpp"
#include "json.hpp"

namespace {

using namespace avrpid;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct RunConfig {
  // plant (nominal values)
  double ka = 10.0, ta = 0.1, ke = 1.0, te = 0.4, kg = 1.0, tg = 1.0,
         ks = 1.0, ts = 0.01;
  // grids
  double dt = 1e-3;
  double horizon = 30.0;      // metric extraction
  double obj_horizon = 10.0;  // objective evaluation
  // controller / scenario
  std::string gains;   // "kp,ki,kd"
  std::string events;  // "time:magnitude,..."
  double amplitude = 1.0;
  // objective
  std::string objective = "itse";
  double beta = 1.0, mu = 50.0, w1 = 1.0, w2 = 0.1, w3 = 1.0;
  bool literal_rmse = false;
  // optimizer
  std::string algo = "pso";
  std::uint64_t seed = 0;
  std::size_t population = 50;
  std::size_t iterations = 100;
  double lb = 0.01, ub = 2.0;
  // io
  std::string out;
  std::string out_json;
  std::string history;
  std::string in;
  std::string table = "data/reference_table.json";
  std::string tolerances = "data/tolerances.json";
  std::string rows;
  std::string params = "ta,te,tg,ts";
  std::string levels = "-0.5,-0.25,0,0.25,0.5";
  // metrics
  double reference = 1.0;
  double band = 0.02;
  std::string rise = "10-90";
  // bode
  std::size_t points = 2000;
  double wmin = 1e-2, wmax = 1e3;
  std::string margins_from = "closed";
  // misc
  bool check_ranges = false;
};

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + std::string(e.what()));
  }
  if (!j.is_object()) throw ParseError(path + ": expected a JSON object");

  auto take_double = [&](const char* key, double* target) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) {
      throw ParseError(std::string(key) + ": expected a number");
    }
    *target = j.at(key).get<double>();
    j.erase(key);
  };
  auto take_count = [&](const char* key, std::size_t* target) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_unsigned()) {
      throw ParseError(std::string(key) + ": expected a nonnegative integer");
    }
    *target = j.at(key).get<std::size_t>();
    j.erase(key);
  };
  auto take_seed = [&](const char* key, std::uint64_t* target) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_unsigned()) {
      throw ParseError(std::string(key) + ": expected a nonnegative integer");
    }
    *target = j.at(key).get<std::uint64_t>();
    j.erase(key);
  };
  auto take_string = [&](const char* key, std::string* target) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_string()) {
      throw ParseError(std::string(key) + ": expected a string");
    }
    *target = j.at(key).get<std::string>();
    j.erase(key);
  };
  auto take_flag = [&](const char* key, bool* target) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_boolean()) {
      throw ParseError(std::string(key) + ": expected a boolean");
    }
    *target = j.at(key).get<bool>();
    j.erase(key);
  };

  take_double("ka", &cfg.ka);
  take_double("ta", &cfg.ta);
  take_double("ke", &cfg.ke);
  take_double("te", &cfg.te);
  take_double("kg", &cfg.kg);
  take_double("tg", &cfg.tg);
  take_double("ks", &cfg.ks);
  take_double("ts", &cfg.ts);
  take_double("dt", &cfg.dt);
  take_double("horizon", &cfg.horizon);
  take_double("obj_horizon", &cfg.obj_horizon);
  take_double("amplitude", &cfg.amplitude);
  take_double("beta", &cfg.beta);
  take_double("mu", &cfg.mu);
  take_double("w1", &cfg.w1);
  take_double("w2", &cfg.w2);
  take_double("w3", &cfg.w3);
  take_double("lb", &cfg.lb);
  take_double("ub", &cfg.ub);
  take_double("reference", &cfg.reference);
  take_double("band", &cfg.band);
  take_double("wmin", &cfg.wmin);
  take_double("wmax", &cfg.wmax);
  take_count("population", &cfg.population);
  take_count("iterations", &cfg.iterations);
  take_count("points", &cfg.points);
  take_seed("seed", &cfg.seed);
  take_string("gains", &cfg.gains);
  take_string("events", &cfg.events);
  take_string("objective", &cfg.objective);
  take_string("algo", &cfg.algo);
  take_string("out", &cfg.out);
  take_string("out_json", &cfg.out_json);
  take_string("history", &cfg.history);
  take_string("in", &cfg.in);
  take_string("table", &cfg.table);
  take_string("tolerances", &cfg.tolerances);
  take_string("rows", &cfg.rows);
  take_string("params", &cfg.params);
  take_string("levels", &cfg.levels);
  take_string("rise", &cfg.rise);
  take_string("margins_from", &cfg.margins_from);
  take_flag("literal_rmse", &cfg.literal_rmse);
  take_flag("check_ranges", &cfg.check_ranges);

  if (!j.empty()) {
    throw ParseError(path + ": unknown key \"" + j.begin().key() + "\"");
  }
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw InvalidParameterError("bad number: " + item);
  }
  return out;
}

std::optional<PidGains> parse_gains(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto v = parse_numbers(text);
  if (v.size() != 3) {
    throw InvalidParameterError("--gains wants kp,ki,kd");
  }
  PidGains g{v[0], v[1], v[2]};
  g.validate();
  return g;
}

std::vector<DisturbanceEvent> parse_events(const std::string& text) {
  std::vector<DisturbanceEvent> events;
  if (text.empty()) return events;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidParameterError("--events wants time:magnitude pairs");
    }
    events.push_back({std::stod(item.substr(0, colon)),
                      std::stod(item.substr(colon + 1))});
  }
  return events;
}

AvrParams plant_of(const RunConfig& cfg) {
  AvrParams p{cfg.ka, cfg.ta, cfg.ke, cfg.te, cfg.kg, cfg.tg, cfg.ks, cfg.ts};
  p.validate();
  if (cfg.check_ranges) {
    for (const auto& warning : p.range_warnings()) {
      std::cerr << "warning: " << warning << "\n";
    }
  }
  return p;
}

void print_transients(const TransientMetrics& m) {
  std::cout << "peak_value   = " << format_sig(m.peak_value) << " p.u.\n"
            << "overshoot    = " << format_sig(m.mp_pct) << " %\n"
            << "peak_time    = " << format_sig(m.tp) << " s\n"
            << "rise_time    = " << format_sig(m.tr) << " s ("
            << (m.rise_def == RiseTimeDef::TenToNinety ? "10-90%" : "0-100%")
            << ")\n"
            << "settling     = " << format_sig(m.ts) << " s\n"
            << "ess          = " << format_sig(m.ess) << " p.u.\n"
            << "final_value  = " << format_sig(m.final_value) << " p.u.\n";
}

void print_frequency(const FrequencyMetrics& f) {
  std::cout << "peak_gain    = " << format_sig(f.peak_gain_db) << " dB\n"
            << "phase_margin = " << format_sig(f.phase_margin_deg) << " deg\n"
            << "crossover    = " << format_sig(f.gain_crossover) << " rad/s\n"
            << "delay_margin = " << format_sig(f.delay_margin_s) << " s\n"
            << "bandwidth    = " << format_sig(f.bandwidth) << " rad/s\n";
}

TransientOptions transient_options(const RunConfig& cfg) {
  TransientOptions opt;
  opt.settle_band = cfg.band;
  if (cfg.rise == "10-90") {
    opt.rise_def = RiseTimeDef::TenToNinety;
  } else if (cfg.rise == "0-100") {
    opt.rise_def = RiseTimeDef::ZeroToHundred;
  } else {
    throw InvalidParameterError("--rise wants 10-90 or 0-100");
  }
  return opt;
}

int cmd_simulate(const RunConfig& cfg) {
  const AvrParams p = plant_of(cfg);
  const auto gains = parse_gains(cfg.gains);
  if (gains && pid_tf(*gains).num().is_zero()) {
    std::cerr << "error: gains 0,0,0 zero the forward path\n";
    return kExitUsage;
  }
  const auto events = parse_events(cfg.events);
  const SimGrid grid{cfg.dt, cfg.horizon};

  StepResponse response;
  if (events.empty()) {
    const TransferFunction closed =
        gains ? avr_pid_closed_loop(p, *gains) : avr_closed_loop(p);
    const PoleZeroReport pz = pole_zero_report(closed);
    if (!pz.stable) {
      std::cerr << "error: closed loop unstable; poles:";
      for (const auto& pole : pz.poles) {
        std::cerr << " " << format_sig(pole.real())
                  << (pole.imag() < 0 ? "-" : "+")
                  << format_sig(std::abs(pole.imag())) << "i";
      }
      std::cerr << "\n";
      return kExitNumerical;
    }
    response = step_response(tf_to_state_space(closed), grid, cfg.amplitude);
  } else {
    response = scenario_response(p, gains, events, grid);
  }

  const std::string out = cfg.out.empty() ? "response.csv" : cfg.out;
  write_response_csv(response, out);
  std::cout << "trajectory: " << out << " (" << response.v.size()
            << " samples)\n";
  try {
    print_transients(transient_metrics(response, transient_options(cfg)));
  } catch (const Error& e) {
    std::cerr << "note: metrics skipped: " << e.what() << "\n";
  }
  return kExitOk;
}

int cmd_metrics(const RunConfig& cfg) {
  const StepResponse r = read_response_csv(cfg.in, cfg.reference);
  print_transients(transient_metrics(r, transient_options(cfg)));
  return kExitOk;
}

int cmd_bode(const RunConfig& cfg) {
  const AvrParams p = plant_of(cfg);
  const auto gains = parse_gains(cfg.gains);
  const TransferFunction closed =
      gains ? avr_pid_closed_loop(p, *gains) : avr_closed_loop(p);

  TransferFunction margin_source = closed;
  if (cfg.margins_from == "loop") {
    margin_source =
        gains ? loop_tf(p, *gains)
              : tf_series(tf_series(block_tf(p.ka, p.ta), block_tf(p.ke, p.te)),
                          tf_series(block_tf(p.kg, p.tg), block_tf(p.ks, p.ts)));
  } else if (cfg.margins_from != "closed") {
    throw InvalidParameterError("--margins-from wants closed or loop");
  }

  FrequencyOptions opt;
  opt.omega_min = cfg.wmin;
  opt.omega_max = cfg.wmax;
  opt.points = cfg.points;
  print_frequency(frequency_metrics(margin_source, closed, opt));

  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out);
    if (!out) throw Error("cannot write " + cfg.out);
    out << "omega_rad_s,loop_mag_db,loop_phase_deg,closed_mag_db,"
           "closed_phase_deg\n";
    double loop_phase = 0.0;
    double closed_phase = 0.0;
    std::complex<double> prev_l;
    std::complex<double> prev_c;
    for (std::size_t i = 0; i < opt.points; ++i) {
      const double w = std::pow(
          10.0, std::log10(opt.omega_min) +
                    (std::log10(opt.omega_max) - std::log10(opt.omega_min)) *
                        static_cast<double>(i) /
                        static_cast<double>(opt.points - 1));
      const std::complex<double> s(0.0, w);
      const std::complex<double> l = margin_source(s);
      const std::complex<double> c = closed(s);
      loop_phase = i == 0 ? std::arg(l) : loop_phase + std::arg(l / prev_l);
      closed_phase = i == 0 ? std::arg(c) : closed_phase + std::arg(c / prev_c);
      prev_l = l;
      prev_c = c;
      out << format_full(w) << ','
          << format_full(20.0 * std::log10(std::abs(l))) << ','
          << format_full(loop_phase * 180.0 / M_PI) << ','
          << format_full(20.0 * std::log10(std::abs(c))) << ','
          << format_full(closed_phase * 180.0 / M_PI) << '\n';
    }
    std::cout << "bode samples: " << cfg.out << "\n";
  }
  return kExitOk;
}

int cmd_tune(const RunConfig& cfg) {
  const AvrParams p = plant_of(cfg);

  PidGains best;
  if (cfg.algo == "zn") {
    const auto [ku, tu] = ultimate_gain(p);
    best = ziegler_nichols(p);
    std::cout << "ku = " << format_sig(ku) << "\n"
              << "tu = " << format_sig(tu) << " s\n";
  } else {
    ObjectiveSpec spec;
    spec.kind = objective_from_name(cfg.objective);
    spec.beta = cfg.beta;
    spec.mu = cfg.mu;
    spec.w1 = cfg.w1;
    spec.w2 = cfg.w2;
    spec.w3 = cfg.w3;
    spec.grid = {cfg.dt, cfg.obj_horizon};
    spec.literal_rmse = cfg.literal_rmse;
    spec.validate();
    for (const auto& warning : spec.warnings()) {
      std::cerr << "warning: " << warning << "\n";
    }
    if (spec.kind == ObjectiveKind::Zlg || spec.kind == ObjectiveKind::Combined) {
      std::cerr << "note: transient criterion weights (1 - e^-beta), the "
                   "corrected form of the commonly misprinted (1 - e^beta)\n";
    }

    OptimizerConfig opt;
    if (cfg.algo == "pso") {
      opt.algorithm = Algorithm::Pso;
    } else if (cfg.algo == "de") {
      opt.algorithm = Algorithm::De;
    } else if (cfg.algo == "goa") {
      opt.algorithm = Algorithm::Goa;
    } else {
      std::cerr << "error: --algo wants zn, pso, de or goa\n";
      return kExitUsage;
    }
    opt.population = cfg.population;
    opt.iterations = cfg.iterations;
    opt.seed = cfg.seed;
    opt.validate();

    const Bounds bounds{{cfg.lb, cfg.lb, cfg.lb}, {cfg.ub, cfg.ub, cfg.ub}};
    const ObjectiveFn objective = [&](const std::vector<double>& x) {
      return evaluate_gains(p, {x[0], x[1], x[2]}, spec).value;
    };
    const OptimizerResult result = optimize(objective, bounds, opt);
    best = {result.best[0], result.best[1], result.best[2]};
    std::cout << "objective " << objective_name(spec.kind) << " = "
              << format_sig(result.best_value) << " after "
              << result.evaluations << " evaluations\n";

    if (!cfg.history.empty()) {
      std::ofstream out(cfg.history);
      if (!out) throw Error("cannot write " + cfg.history);
      out << "iteration,best_value\n";
      for (std::size_t i = 0; i < result.history.size(); ++i) {
        out << i << ',' << format_full(result.history[i]) << '\n';
      }
      std::cout << "history: " << cfg.history << "\n";
    }
  }

  std::cout << "kp = " << format_sig(best.kp) << "\n"
            << "ki = " << format_sig(best.ki) << "\n"
            << "kd = " << format_sig(best.kd) << "\n";

  const TransferFunction closed = avr_pid_closed_loop(p, best);
  if (pole_zero_report(closed).stable) {
    print_transients(transient_metrics(
        step_response(tf_to_state_space(closed), {cfg.dt, cfg.horizon})));
  } else {
    std::cerr << "note: tuned loop unstable; metrics skipped\n";
  }
  return kExitOk;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::transform(item.begin(), item.end(), item.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_bench(const RunConfig& cfg) {
  const AvrParams p = plant_of(cfg);
  const auto entries = load_reference_table(cfg.table);
  const Tolerances tol = load_tolerances(cfg.tolerances);
  const SimGrid grid{cfg.dt, cfg.horizon};
  const ComparisonReport report =
      reproduce_table(entries, p, tol, parse_name_list(cfg.rows), grid);

  for (const auto& row : report.rows) {
    std::size_t passed = 0;
    for (const auto& c : row.comparisons) passed += c.pass ? 1 : 0;
    std::cout << row.algorithm << ": ";
    if (!row.gains) {
      std::cout << "listed only (no gains)";
    } else if (!row.stable) {
      std::cout << "unstable closed loop";
    } else {
      std::cout << passed << "/" << row.comparisons.size()
                << " metric comparisons pass";
      if (row.pole_comparison) {
        std::cout << ", poles " << (row.pole_comparison->pass ? "pass" : "fail");
      }
      std::cout << (row.paper_consistent ? "" : " [paper-inconsistent]");
    }
    std::cout << "\n";
  }

  const std::string out = cfg.out.empty() ? "bench_report.csv" : cfg.out;
  write_report_csv(report, out);
  std::cout << "report: " << out << "\n";
  if (!cfg.out_json.empty()) {
    write_report_json(report, cfg.out_json);
    std::cout << "report: " << cfg.out_json << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const AvrParams p = plant_of(cfg);
  const auto gains = parse_gains(cfg.gains);
  if (!gains) {
    std::cerr << "error: --gains is required\n";
    return kExitUsage;
  }

  SweepSpec spec;
  spec.parameters.clear();
  for (const auto& name : parse_name_list(cfg.params)) {
    if (name == "ta") {
      spec.parameters.push_back(SweepParameter::AmplifierTc);
    } else if (name == "te") {
      spec.parameters.push_back(SweepParameter::ExciterTc);
    } else if (name == "tg") {
      spec.parameters.push_back(SweepParameter::GeneratorTc);
    } else if (name == "ts") {
      spec.parameters.push_back(SweepParameter::SensorTc);
    } else {
      throw InvalidParameterError("--params wants ta,te,tg,ts");
    }
  }
  spec.levels = parse_numbers(cfg.levels);
  spec.validate();

  const auto rows =
      robustness_sweep(p, *gains, spec, SimGrid{cfg.dt, cfg.horizon});
  std::size_t stable = 0;
  for (const auto& row : rows) stable += row.stable ? 1 : 0;
  std::cout << rows.size() << " cases, " << stable << " stable\n";

  const std::string out = cfg.out.empty() ? "sweep.csv" : cfg.out;
  write_sweep_csv(rows, out);
  std::cout << "sweep table: " << out << "\n";
  return kExitOk;
}

void add_config_option(CLI::App* cmd) {
  // consumed in a pre-pass; registered so CLI11 accepts it
  cmd->add_option("--config", "JSON config file; flags win on conflict");
}

void add_plant_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--ka", cfg.ka, "amplifier gain")->capture_default_str();
  cmd->add_option("--ta", cfg.ta, "amplifier time constant, s")
      ->capture_default_str();
  cmd->add_option("--ke", cfg.ke, "exciter gain")->capture_default_str();
  cmd->add_option("--te", cfg.te, "exciter time constant, s")
      ->capture_default_str();
  cmd->add_option("--kg", cfg.kg, "generator gain")->capture_default_str();
  cmd->add_option("--tg", cfg.tg, "generator time constant, s")
      ->capture_default_str();
  cmd->add_option("--ks", cfg.ks, "sensor gain")->capture_default_str();
  cmd->add_option("--ts", cfg.ts, "sensor time constant, s")
      ->capture_default_str();
  cmd->add_flag("--check-ranges", cfg.check_ranges,
                "warn when a parameter leaves its published range");
  add_config_option(cmd);
}

void add_grid_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--dt", cfg.dt, "sample interval, s")->capture_default_str();
  cmd->add_option("--horizon", cfg.horizon, "simulation horizon, s")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // config file first so that explicit flags win
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        apply_config_file(argv[i + 1], cfg);
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
    }
  }

  CLI::App app{
      "Four-block automatic-voltage-regulator PID bench: simulation, "
      "transient/frequency metrics, metaheuristic tuning and published-table "
      "reproduction. AVRPID_THREADS caps internal parallelism (0 = auto)."};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand(
      "simulate", "step or disturbance response to CSV plus metrics");
  add_plant_options(simulate, cfg);
  add_grid_options(simulate, cfg);
  simulate->add_option("--gains", cfg.gains, "controller gains kp,ki,kd");
  simulate->add_option("--events", cfg.events,
                       "disturbance events time:magnitude,...");
  simulate
      ->add_option("--amplitude", cfg.amplitude, "reference step size, p.u.")
      ->capture_default_str();
  simulate->add_option("--out", cfg.out,
                       "trajectory CSV path (default response.csv)");

  auto* metrics = app.add_subcommand(
      "metrics", "transient metrics from a t,v trajectory CSV");
  metrics->add_option("--in", cfg.in, "trajectory CSV path")->required();
  metrics->add_option("--reference", cfg.reference, "reference voltage, p.u.")
      ->capture_default_str();
  metrics
      ->add_option("--rise", cfg.rise, "rise-time definition: 10-90 or 0-100")
      ->capture_default_str();
  metrics->add_option("--band", cfg.band, "settling band, fraction of final")
      ->capture_default_str();
  add_config_option(metrics);

  auto* bode = app.add_subcommand(
      "bode", "frequency metrics plus sampled magnitude/phase CSV");
  add_plant_options(bode, cfg);
  bode->add_option("--gains", cfg.gains, "controller gains kp,ki,kd");
  bode->add_option("--points", cfg.points, "frequency samples")
      ->capture_default_str();
  bode->add_option("--wmin", cfg.wmin, "scan start, rad/s")
      ->capture_default_str();
  bode->add_option("--wmax", cfg.wmax, "scan end, rad/s")->capture_default_str();
  bode->add_option("--margins-from", cfg.margins_from,
                   "margin source: closed (published-table convention) or loop")
      ->capture_default_str();
  bode->add_option("--out", cfg.out, "bode CSV path");

  auto* tune = app.add_subcommand(
      "tune", "tune gains with zn, pso, de or goa and report metrics");
  add_plant_options(tune, cfg);
  tune->add_option("--algo", cfg.algo, "zn, pso, de or goa")
      ->capture_default_str();
  tune->add_option("--objective", cfg.objective,
                   "iae, itae, ise, itse, rmse, zlg, j, of1..of4")
      ->capture_default_str();
  tune->add_option("--population", cfg.population, "swarm/population size")
      ->capture_default_str();
  tune->add_option("--iterations", cfg.iterations, "iteration budget")
      ->capture_default_str();
  tune->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  tune->add_option("--lb", cfg.lb, "lower gain bound")->capture_default_str();
  tune->add_option("--ub", cfg.ub, "upper gain bound")->capture_default_str();
  tune->add_option("--beta", cfg.beta, "transient-criterion weight")
      ->capture_default_str();
  tune->add_option("--mu", cfg.mu, "combined-criterion weight")
      ->capture_default_str();
  tune->add_option("--w1", cfg.w1, "of1..of4 index weight")
      ->capture_default_str();
  tune->add_option("--w2", cfg.w2, "of1..of4 settling weight")
      ->capture_default_str();
  tune->add_option("--w3", cfg.w3, "of1..of4 overshoot weight")
      ->capture_default_str();
  tune->add_option("--dt", cfg.dt, "objective grid sample interval, s")
      ->capture_default_str();
  tune->add_option("--obj-horizon", cfg.obj_horizon,
                   "objective grid horizon, s")
      ->capture_default_str();
  tune->add_option("--horizon", cfg.horizon, "metric extraction horizon, s")
      ->capture_default_str();
  tune->add_flag("--literal-rmse", cfg.literal_rmse,
                 "use the literal printed integral for rmse");
  tune->add_option("--history", cfg.history, "convergence history CSV path");

  auto* bench = app.add_subcommand(
      "bench", "reproduce the published gain/metric table and diff it");
  add_plant_options(bench, cfg);
  add_grid_options(bench, cfg);
  bench->add_option("--table", cfg.table, "reference table JSON")
      ->capture_default_str();
  bench->add_option("--tolerances", cfg.tolerances, "tolerance policy JSON")
      ->capture_default_str();
  bench->add_option("--rows", cfg.rows, "comma-separated algorithm filter");
  bench->add_option("--out", cfg.out,
                    "report CSV path (default bench_report.csv)");
  bench->add_option("--out-json", cfg.out_json, "report JSON path");

  auto* sweep = app.add_subcommand(
      "sweep", "time-constant robustness sweep for one gain set");
  add_plant_options(sweep, cfg);
  add_grid_options(sweep, cfg);
  sweep->add_option("--gains", cfg.gains, "controller gains kp,ki,kd");
  sweep->add_option("--params", cfg.params, "time constants to vary")
      ->capture_default_str();
  sweep->add_option("--levels", cfg.levels, "fractional offsets incl. 0")
      ->capture_default_str();
  sweep->add_option("--out", cfg.out, "sweep CSV path (default sweep.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (metrics->parsed()) return cmd_metrics(cfg);
    if (bode->parsed()) return cmd_bode(cfg);
    if (tune->parsed()) return cmd_tune(cfg);
    if (bench->parsed()) return cmd_bench(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
  } catch (const UnstableLoopError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const SimulationOverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const UnsettledError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NotTunableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DegenerateLoopError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
