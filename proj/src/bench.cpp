#include "avrpid/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "avrpid/csv.hpp"
#include "avrpid/errors.hpp"
#include "avrpid/parallel.hpp"
#include "json.hpp"

namespace avrpid {

namespace {

using nlohmann::json;

double number_or_inf(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && (j.get<std::string>() == "inf" ||
                        j.get<std::string>() == "Inf")) {
    return std::numeric_limits<double>::infinity();
  }
  throw ParseError(where + ": expected a number or \"inf\"");
}

std::optional<double> opt_number(const json& row, const char* key,
                                 const std::string& where) {
  if (!row.contains(key) || row.at(key).is_null()) return std::nullopt;
  return number_or_inf(row.at(key), where + "." + key);
}

}  // namespace

std::vector<ReferenceEntry> load_reference_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  json table;
  try {
    in >> table;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!table.is_array()) throw ParseError(path + ": expected a JSON array");

  std::vector<ReferenceEntry> entries;
  entries.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string where = path + ": row " + std::to_string(i);
    const json& row = table[i];
    if (!row.is_object()) throw ParseError(where + ": expected an object");
    ReferenceEntry e;
    try {
      e.algorithm = row.at("algorithm").get<std::string>();
      e.objective = row.at("objective").get<std::string>();
    } catch (const json::exception&) {
      throw ParseError(where + ": field algorithm/objective missing or not a string");
    }
    const bool has_kp = row.contains("kp") && !row.at("kp").is_null();
    const bool has_ki = row.contains("ki") && !row.at("ki").is_null();
    const bool has_kd = row.contains("kd") && !row.at("kd").is_null();
    if (has_kp != has_ki || has_ki != has_kd) {
      throw ParseError(where + ": gains must be all present or all absent");
    }
    if (has_kp) {
      PidGains g;
      for (auto [key, target] :
           {std::pair{"kp", &g.kp}, {"ki", &g.ki}, {"kd", &g.kd}}) {
        if (!row.at(key).is_number()) {
          throw ParseError(where + ": field " + key + " is not a number");
        }
        *target = row.at(key).get<double>();
        if (!(*target > 0.0)) {
          throw ParseError(where + ": field " + std::string(key) +
                           " must be positive");
        }
      }
      e.gains = g;
    }
    if (row.contains("note")) e.note = row.at("note").get<std::string>();
    if (!row.contains("published") || !row.at("published").is_object()) {
      throw ParseError(where + ": field published missing or not an object");
    }
    const json& pub = row.at("published");
    e.published.peak_pu = opt_number(pub, "peak_pu", where);
    e.published.tp_s = opt_number(pub, "tp_s", where);
    e.published.mp_pct = opt_number(pub, "mp_pct", where);
    e.published.tr_s = opt_number(pub, "tr_s", where);
    e.published.ts_s = opt_number(pub, "ts_s", where);
    e.published.ess = opt_number(pub, "ess", where);
    e.published.pm_deg = opt_number(pub, "pm_deg", where);
    e.published.dm_s = opt_number(pub, "dm_s", where);
    e.published.peak_gain_db = opt_number(pub, "peak_gain_db", where);
    e.published.bw = opt_number(pub, "bw", where);
    if (pub.contains("poles")) {
      if (!pub.at("poles").is_array()) {
        throw ParseError(where + ".published.poles: expected an array");
      }
      for (const json& p : pub.at("poles")) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
            !p[1].is_number()) {
          throw ParseError(where + ".published.poles: expected [re, im] pairs");
        }
        e.published.poles.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
    }
    if (pub.contains("damping")) {
      for (const json& d : pub.at("damping")) {
        if (!d.is_number()) {
          throw ParseError(where + ".published.damping: expected numbers");
        }
        e.published.damping.push_back(d.get<double>());
      }
    }
    const bool any_metric =
        e.published.peak_pu || e.published.tp_s || e.published.mp_pct ||
        e.published.tr_s || e.published.ts_s || e.published.ess ||
        e.published.pm_deg || e.published.dm_s || e.published.peak_gain_db ||
        e.published.bw || !e.published.poles.empty();
    if (!any_metric && !e.gains) {
      throw ParseError(where + ": row has neither gains nor published metrics");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

Tolerances load_tolerances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  Tolerances tol;
  auto take = [&](const char* key, double* target) {
    if (j.contains(key)) {
      if (!j.at(key).is_number()) {
        throw ParseError(path + ": field " + key + " is not a number");
      }
      *target = j.at(key).get<double>();
    }
  };
  take("peak_rel", &tol.peak_rel);
  take("tp_rel", &tol.tp_rel);
  take("ts_rel", &tol.ts_rel);
  take("tr_rel", &tol.tr_rel);
  take("mp_abs_pts", &tol.mp_abs_pts);
  take("ess_abs", &tol.ess_abs);
  take("pole_rel", &tol.pole_rel);
  take("pole_dominant_abs", &tol.pole_dominant_abs);
  take("pm_abs_deg", &tol.pm_abs_deg);
  take("dm_abs_s", &tol.dm_abs_s);
  take("peak_gain_abs_db", &tol.peak_gain_abs_db);
  take("bw_rel", &tol.bw_rel);
  return tol;
}

namespace {

MetricComparison compare(const std::string& metric, double computed,
                         double published, double tolerance, bool relative) {
  MetricComparison c;
  c.metric = metric;
  c.computed = computed;
  c.published = published;
  c.abs_delta = std::abs(computed - published);
  c.rel_delta = published != 0.0
                    ? c.abs_delta / std::abs(published)
                    : (c.abs_delta == 0.0
                           ? 0.0
                           : std::numeric_limits<double>::infinity());
  c.tolerance = tolerance;
  c.relative = relative;
  if (std::isinf(published) || std::isinf(computed)) {
    c.pass = std::isinf(published) && std::isinf(computed) &&
             (published > 0) == (computed > 0);
    c.abs_delta = c.pass ? 0.0 : std::numeric_limits<double>::infinity();
    c.rel_delta = c.abs_delta;
  } else {
    c.pass = relative ? c.rel_delta <= tolerance : c.abs_delta <= tolerance;
  }
  return c;
}

}  // namespace

ComparisonRow reproduce_entry(const ReferenceEntry& e, const AvrParams& p,
                              const Tolerances& tol, const SimGrid& grid) {
  if (!e.has_gains()) {
    throw InvalidParameterError("entry " + e.algorithm + " has no gains");
  }
  ComparisonRow row;
  row.algorithm = e.algorithm;
  row.objective = e.objective;
  row.gains = e.gains;
  row.note = e.note;

  const TransferFunction closed = avr_pid_closed_loop(p, *e.gains);
  const PoleZeroReport pz = pole_zero_report(closed);
  row.poles = pz.poles;
  row.damping = pz.damping;
  row.stable = pz.stable;
  if (!row.stable) {
    row.note = row.note.empty() ? "unstable closed loop"
                                : row.note + "; unstable closed loop";
    row.paper_consistent = false;
    return row;
  }

  const StepResponse response =
      step_response(tf_to_state_space(closed), grid);
  try {
    row.metrics = transient_metrics(response);
    TransientOptions five;
    five.settle_band = 0.05;
    row.ts_5pct = transient_metrics(response, five).ts;
    TransientOptions full_rise;
    full_rise.rise_def = RiseTimeDef::ZeroToHundred;
    row.tr_0_100 = transient_metrics(response, full_rise).tr;
  } catch (const UnsettledError&) {
    row.note = row.note.empty()
                   ? "response not settled within the grid horizon"
                   : row.note + "; response not settled within the grid horizon";
    row.paper_consistent = false;
  }
  // published Bode columns track the closed-loop frequency response, so the
  // closed loop is also the margin source here
  row.freq = frequency_metrics(closed, closed);

  const auto& pub = e.published;
  auto add = [&](MetricComparison c) { row.comparisons.push_back(std::move(c)); };

  if (!row.metrics) {
    return row;  // noted above; frequency metrics and poles still reported
  }
  if (pub.peak_pu) {
    add(compare("peak_pu", row.metrics->peak_value, *pub.peak_pu, tol.peak_rel,
                true));
  }
  if (pub.tp_s) add(compare("tp_s", row.metrics->tp, *pub.tp_s, tol.tp_rel, true));
  if (pub.mp_pct) {
    add(compare("mp_pct", row.metrics->mp_pct, *pub.mp_pct, tol.mp_abs_pts,
                false));
  }
  if (pub.tr_s) {
    MetricComparison c =
        compare("tr_s", row.metrics->tr, *pub.tr_s, tol.tr_rel, true);
    if (!c.pass) {
      const MetricComparison alt =
          compare("tr_s", *row.tr_0_100, *pub.tr_s, tol.tr_rel, true);
      if (alt.pass) {
        c = alt;
        row.tr_def = "0-100%";
      }
    }
    add(c);
  }
  if (pub.ts_s) {
    MetricComparison c =
        compare("ts_s", row.metrics->ts, *pub.ts_s, tol.ts_rel, true);
    if (!c.pass) {
      const MetricComparison alt =
          compare("ts_s", *row.ts_5pct, *pub.ts_s, tol.ts_rel, true);
      if (alt.pass) {
        c = alt;
        row.ts_band = "5%";
      }
    }
    add(c);
  }
  if (pub.ess) add(compare("ess", row.metrics->ess, *pub.ess, tol.ess_abs, false));
  if (pub.pm_deg) {
    add(compare("pm_deg", row.freq->phase_margin_deg, *pub.pm_deg,
                tol.pm_abs_deg, false));
  }
  if (pub.dm_s) {
    add(compare("dm_s", row.freq->delay_margin_s, *pub.dm_s, tol.dm_abs_s,
                false));
  }
  if (pub.peak_gain_db) {
    add(compare("peak_gain_db", row.freq->peak_gain_db, *pub.peak_gain_db,
                tol.peak_gain_abs_db, false));
  }
  if (pub.bw) {
    add(compare("bw_rad_s", row.freq->bandwidth, *pub.bw, tol.bw_rel, true));
  }

  if (!pub.poles.empty()) {
    PoleComparison pc;
    pc.tolerance_rel = tol.pole_rel;
    pc.tolerance_dominant_abs = tol.pole_dominant_abs;
    pc.pass = true;
    double dominant_re = -std::numeric_limits<double>::infinity();
    for (const auto& q : pub.poles) dominant_re = std::max(dominant_re, q.real());
    for (const auto& q : pub.poles) {
      double dist = std::numeric_limits<double>::infinity();
      for (const auto& c : row.poles) dist = std::min(dist, std::abs(c - q));
      const double rel = dist / std::abs(q);
      pc.rel_deltas.push_back(rel);
      pc.abs_deltas.push_back(dist);
      const bool dominant = q.real() >= dominant_re - 1e-9;
      const bool ok =
          rel <= tol.pole_rel || (dominant && dist <= tol.pole_dominant_abs);
      pc.pass = pc.pass && ok;
    }
    row.pole_comparison = pc;
  }

  row.paper_consistent =
      std::all_of(row.comparisons.begin(), row.comparisons.end(),
                  [](const MetricComparison& c) { return c.pass; }) &&
      (!row.pole_comparison || row.pole_comparison->pass);
  return row;
}

ComparisonReport reproduce_table(const std::vector<ReferenceEntry>& entries,
                                 const AvrParams& p, const Tolerances& tol,
                                 const std::vector<std::string>& only,
                                 const SimGrid& grid) {
  auto wanted = [&](const ReferenceEntry& e) {
    if (only.empty()) return true;
    std::string name = e.algorithm;
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return std::find(only.begin(), only.end(), name) != only.end();
  };

  std::vector<const ReferenceEntry*> selected;
  for (const auto& e : entries) {
    if (wanted(e)) selected.push_back(&e);
  }

  ComparisonReport report;
  report.grid = grid;
  report.tolerances = tol;
  report.rows.resize(selected.size());
  parallel_for(selected.size(), [&](std::size_t i) {
    const ReferenceEntry& e = *selected[i];
    if (e.has_gains()) {
      report.rows[i] = reproduce_entry(e, p, tol, grid);
    } else {
      ComparisonRow row;
      row.algorithm = e.algorithm;
      row.objective = e.objective;
      row.note = e.note.empty() ? "no gains published; listed only"
                                : e.note + "; no gains published";
      row.paper_consistent = true;
      report.rows[i] = row;
    }
  });
  return report;
}

const char* sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::AmplifierTc: return "TA";
    case SweepParameter::ExciterTc: return "TE";
    case SweepParameter::GeneratorTc: return "TG";
    case SweepParameter::SensorTc: return "TS";
  }
  return "?";
}

void SweepSpec::validate() const {
  if (parameters.empty() || levels.empty()) {
    throw InvalidParameterError("sweep needs parameters and levels");
  }
  if (std::find(levels.begin(), levels.end(), 0.0) == levels.end()) {
    throw InvalidParameterError("sweep levels must include 0 (nominal)");
  }
  for (double level : levels) {
    if (!(level > -1.0) || !std::isfinite(level)) {
      throw InvalidParameterError(
          "sweep level must stay above -100% to keep time constants positive");
    }
  }
}

std::vector<SweepRow> robustness_sweep(const AvrParams& p, const PidGains& g,
                                       const SweepSpec& spec,
                                       const SimGrid& grid) {
  spec.validate();
  p.validate();
  g.validate();

  struct Case {
    std::string parameter;
    double level;
    AvrParams params;
  };
  std::vector<Case> cases;
  cases.push_back({"nominal", 0.0, p});
  for (SweepParameter param : spec.parameters) {
    for (double level : spec.levels) {
      if (level == 0.0) continue;  // the shared nominal row covers it
      AvrParams perturbed = p;
      switch (param) {
        case SweepParameter::AmplifierTc: perturbed.ta *= 1.0 + level; break;
        case SweepParameter::ExciterTc: perturbed.te *= 1.0 + level; break;
        case SweepParameter::GeneratorTc: perturbed.tg *= 1.0 + level; break;
        case SweepParameter::SensorTc: perturbed.ts *= 1.0 + level; break;
      }
      cases.push_back({sweep_parameter_name(param), level, perturbed});
    }
  }

  std::vector<SweepRow> rows(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    SweepRow row;
    row.parameter = cases[i].parameter;
    row.level = cases[i].level;
    const TransferFunction closed = avr_pid_closed_loop(cases[i].params, g);
    const PoleZeroReport pz = pole_zero_report(closed);
    row.stable = pz.stable;
    if (pz.stable) {
      try {
        row.metrics =
            transient_metrics(step_response(tf_to_state_space(closed), grid));
      } catch (const UnsettledError&) {
        row.poles = pz.poles;  // stable but too slow for this horizon
      }
    } else {
      row.poles = pz.poles;
    }
    rows[i] = std::move(row);
  });
  return rows;
}

namespace {

std::string complex_text(const std::complex<double>& z) {
  std::string out = format_full(z.real());
  out += z.imag() < 0 ? " - " : " + ";
  out += format_full(std::abs(z.imag()));
  out += "i";
  return out;
}

std::string poles_text(const std::vector<std::complex<double>>& poles) {
  std::string out;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (i) out += "; ";
    out += complex_text(poles[i]);
  }
  return out;
}

const std::vector<std::string>& report_metric_order() {
  static const std::vector<std::string> order{
      "peak_pu", "tp_s",        "mp_pct",      "tr_s", "ts_s", "ess",
      "pm_deg",  "dm_s",        "peak_gain_db", "bw_rad_s"};
  return order;
}

json grid_to_json(const SimGrid& grid) {
  return json{{"dt", grid.dt}, {"horizon", grid.horizon}};
}

json tolerances_to_json(const Tolerances& tol) {
  return json{{"peak_rel", tol.peak_rel},
              {"tp_rel", tol.tp_rel},
              {"ts_rel", tol.ts_rel},
              {"tr_rel", tol.tr_rel},
              {"mp_abs_pts", tol.mp_abs_pts},
              {"ess_abs", tol.ess_abs},
              {"pole_rel", tol.pole_rel},
              {"pole_dominant_abs", tol.pole_dominant_abs},
              {"pm_abs_deg", tol.pm_abs_deg},
              {"dm_abs_s", tol.dm_abs_s},
              {"peak_gain_abs_db", tol.peak_gain_abs_db},
              {"bw_rel", tol.bw_rel}};
}

json finite_or_text(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  if (std::isnan(v)) return json("nan");
  return json(v);
}

double from_finite_or_text(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

void write_report_csv(const ComparisonReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);

  out << "algorithm,objective,kp,ki,kd,stable,ts_band,tr_def,paper_consistent";
  for (const auto& metric : report_metric_order()) {
    out << ",computed_" << metric << ",published_" << metric << ",abs_delta_"
        << metric << ",rel_delta_" << metric << ",tol_" << metric << ",tol_mode_"
        << metric << ",pass_" << metric;
  }
  out << ",computed_poles,computed_damping,pole_max_rel_delta,tol_pole_rel,"
         "tol_pole_dominant_abs,pass_poles,note\n";

  for (const auto& row : report.rows) {
    out << csv_field(row.algorithm) << ',' << csv_field(row.objective) << ',';
    if (row.gains) {
      out << format_full(row.gains->kp) << ',' << format_full(row.gains->ki)
          << ',' << format_full(row.gains->kd);
    } else {
      out << ",,";
    }
    out << ',' << (row.stable ? "true" : "false") << ',' << row.ts_band << ','
        << row.tr_def << ',' << (row.paper_consistent ? "true" : "false");

    for (const auto& metric : report_metric_order()) {
      const auto it = std::find_if(
          row.comparisons.begin(), row.comparisons.end(),
          [&](const MetricComparison& c) { return c.metric == metric; });
      if (it != row.comparisons.end()) {
        out << ',' << format_full(it->computed) << ','
            << format_full(it->published) << ',' << format_full(it->abs_delta)
            << ',' << format_full(it->rel_delta) << ','
            << format_full(it->tolerance) << ',' << (it->relative ? "rel" : "abs")
            << ',' << (it->pass ? "pass" : "fail");
      } else {
        // computed-only column when the table has a gap
        double computed = std::numeric_limits<double>::quiet_NaN();
        if (row.metrics) {
          if (metric == "peak_pu") computed = row.metrics->peak_value;
          else if (metric == "tp_s") computed = row.metrics->tp;
          else if (metric == "mp_pct") computed = row.metrics->mp_pct;
          else if (metric == "tr_s") computed = row.metrics->tr;
          else if (metric == "ts_s") computed = row.metrics->ts;
          else if (metric == "ess") computed = row.metrics->ess;
        }
        if (row.freq) {
          if (metric == "pm_deg") computed = row.freq->phase_margin_deg;
          else if (metric == "dm_s") computed = row.freq->delay_margin_s;
          else if (metric == "peak_gain_db") computed = row.freq->peak_gain_db;
          else if (metric == "bw_rad_s") computed = row.freq->bandwidth;
        }
        out << ',' << (std::isnan(computed) ? "" : format_full(computed))
            << ",,,,,,";
      }
    }

    out << ',' << csv_field(poles_text(row.poles)) << ',';
    std::string damping;
    for (std::size_t i = 0; i < row.damping.size(); ++i) {
      if (i) damping += "; ";
      damping += format_full(row.damping[i]);
    }
    out << csv_field(damping) << ',';
    if (row.pole_comparison && !row.pole_comparison->rel_deltas.empty()) {
      out << format_full(*std::max_element(
          row.pole_comparison->rel_deltas.begin(),
          row.pole_comparison->rel_deltas.end()));
      out << ',' << format_full(row.pole_comparison->tolerance_rel) << ','
          << format_full(row.pole_comparison->tolerance_dominant_abs) << ','
          << (row.pole_comparison->pass ? "pass" : "fail");
    } else {
      out << ",,,";
    }
    out << ',' << csv_field(row.note) << '\n';
  }
}

void write_report_json(const ComparisonReport& report, const std::string& path) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r{{"algorithm", row.algorithm},
           {"objective", row.objective},
           {"stable", row.stable},
           {"ts_band", row.ts_band},
           {"tr_def", row.tr_def},
           {"paper_consistent", row.paper_consistent},
           {"note", row.note}};
    if (row.gains) {
      r["gains"] = {{"kp", row.gains->kp},
                    {"ki", row.gains->ki},
                    {"kd", row.gains->kd}};
    }
    if (row.metrics) {
      r["computed"] = {{"peak_pu", row.metrics->peak_value},
                       {"tp_s", row.metrics->tp},
                       {"mp_pct", row.metrics->mp_pct},
                       {"tr_s", row.metrics->tr},
                       {"ts_s", row.metrics->ts},
                       {"ess", row.metrics->ess},
                       {"final_value", row.metrics->final_value},
                       {"ts_5pct", *row.ts_5pct},
                       {"tr_0_100", *row.tr_0_100}};
    }
    if (row.freq) {
      r["frequency"] = {{"pm_deg", finite_or_text(row.freq->phase_margin_deg)},
                        {"dm_s", finite_or_text(row.freq->delay_margin_s)},
                        {"gain_crossover", finite_or_text(row.freq->gain_crossover)},
                        {"peak_gain_db", finite_or_text(row.freq->peak_gain_db)},
                        {"bw_rad_s", finite_or_text(row.freq->bandwidth)}};
    }
    if (!row.poles.empty()) {
      json poles = json::array();
      for (const auto& p : row.poles) poles.push_back({p.real(), p.imag()});
      r["poles"] = poles;
      r["damping"] = row.damping;
    }
    json comparisons = json::array();
    for (const auto& c : row.comparisons) {
      comparisons.push_back({{"metric", c.metric},
                             {"computed", finite_or_text(c.computed)},
                             {"published", finite_or_text(c.published)},
                             {"abs_delta", finite_or_text(c.abs_delta)},
                             {"rel_delta", finite_or_text(c.rel_delta)},
                             {"tolerance", c.tolerance},
                             {"mode", c.relative ? "rel" : "abs"},
                             {"pass", c.pass}});
    }
    r["comparisons"] = comparisons;
    if (row.pole_comparison) {
      r["pole_comparison"] = {
          {"rel_deltas", row.pole_comparison->rel_deltas},
          {"abs_deltas", row.pole_comparison->abs_deltas},
          {"tolerance_rel", row.pole_comparison->tolerance_rel},
          {"tolerance_dominant_abs", row.pole_comparison->tolerance_dominant_abs},
          {"pass", row.pole_comparison->pass}};
    }
    rows.push_back(std::move(r));
  }

  const json doc{{"grid", grid_to_json(report.grid)},
                 {"tolerances", tolerances_to_json(report.tolerances)},
                 {"rows", rows}};
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(1) << '\n';
}

ComparisonReport read_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }

  ComparisonReport report;
  report.grid.dt = doc.at("grid").at("dt").get<double>();
  report.grid.horizon = doc.at("grid").at("horizon").get<double>();
  const json& tol = doc.at("tolerances");
  report.tolerances.peak_rel = tol.at("peak_rel").get<double>();
  report.tolerances.tp_rel = tol.at("tp_rel").get<double>();
  report.tolerances.ts_rel = tol.at("ts_rel").get<double>();
  report.tolerances.tr_rel = tol.at("tr_rel").get<double>();
  report.tolerances.mp_abs_pts = tol.at("mp_abs_pts").get<double>();
  report.tolerances.ess_abs = tol.at("ess_abs").get<double>();
  report.tolerances.pole_rel = tol.at("pole_rel").get<double>();
  report.tolerances.pole_dominant_abs = tol.at("pole_dominant_abs").get<double>();
  report.tolerances.pm_abs_deg = tol.at("pm_abs_deg").get<double>();
  report.tolerances.dm_abs_s = tol.at("dm_abs_s").get<double>();
  report.tolerances.peak_gain_abs_db = tol.at("peak_gain_abs_db").get<double>();
  report.tolerances.bw_rel = tol.at("bw_rel").get<double>();

  for (const json& r : doc.at("rows")) {
    ComparisonRow row;
    row.algorithm = r.at("algorithm").get<std::string>();
    row.objective = r.at("objective").get<std::string>();
    row.stable = r.at("stable").get<bool>();
    row.ts_band = r.at("ts_band").get<std::string>();
    row.tr_def = r.at("tr_def").get<std::string>();
    row.paper_consistent = r.at("paper_consistent").get<bool>();
    row.note = r.at("note").get<std::string>();
    if (r.contains("gains")) {
      row.gains = PidGains{r.at("gains").at("kp").get<double>(),
                           r.at("gains").at("ki").get<double>(),
                           r.at("gains").at("kd").get<double>()};
    }
    if (r.contains("computed")) {
      TransientMetrics m;
      const json& c = r.at("computed");
      m.peak_value = c.at("peak_pu").get<double>();
      m.tp = c.at("tp_s").get<double>();
      m.mp_pct = c.at("mp_pct").get<double>();
      m.tr = c.at("tr_s").get<double>();
      m.ts = c.at("ts_s").get<double>();
      m.ess = c.at("ess").get<double>();
      m.final_value = c.at("final_value").get<double>();
      row.metrics = m;
      row.ts_5pct = c.at("ts_5pct").get<double>();
      row.tr_0_100 = c.at("tr_0_100").get<double>();
    }
    if (r.contains("frequency")) {
      FrequencyMetrics f;
      const json& q = r.at("frequency");
      f.phase_margin_deg = from_finite_or_text(q.at("pm_deg"));
      f.delay_margin_s = from_finite_or_text(q.at("dm_s"));
      f.gain_crossover = from_finite_or_text(q.at("gain_crossover"));
      f.peak_gain_db = from_finite_or_text(q.at("peak_gain_db"));
      f.bandwidth = from_finite_or_text(q.at("bw_rad_s"));
      row.freq = f;
    }
    if (r.contains("poles")) {
      for (const json& p : r.at("poles")) {
        row.poles.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
      row.damping = r.at("damping").get<std::vector<double>>();
    }
    for (const json& c : r.at("comparisons")) {
      MetricComparison mc;
      mc.metric = c.at("metric").get<std::string>();
      mc.computed = from_finite_or_text(c.at("computed"));
      mc.published = from_finite_or_text(c.at("published"));
      mc.abs_delta = from_finite_or_text(c.at("abs_delta"));
      mc.rel_delta = from_finite_or_text(c.at("rel_delta"));
      mc.tolerance = c.at("tolerance").get<double>();
      mc.relative = c.at("mode").get<std::string>() == "rel";
      mc.pass = c.at("pass").get<bool>();
      row.comparisons.push_back(std::move(mc));
    }
    if (r.contains("pole_comparison")) {
      PoleComparison pc;
      const json& q = r.at("pole_comparison");
      pc.rel_deltas = q.at("rel_deltas").get<std::vector<double>>();
      pc.abs_deltas = q.at("abs_deltas").get<std::vector<double>>();
      pc.tolerance_rel = q.at("tolerance_rel").get<double>();
      pc.tolerance_dominant_abs = q.at("tolerance_dominant_abs").get<double>();
      pc.pass = q.at("pass").get<bool>();
      row.pole_comparison = pc;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "parameter,level,stable,peak_pu,mp_pct,tp_s,tr_s,ts_s,ess,final_value,"
         "poles\n";
  for (const auto& row : rows) {
    out << csv_field(row.parameter) << ',' << format_full(row.level) << ','
        << (row.stable ? "true" : "false") << ',';
    if (row.metrics) {
      out << format_full(row.metrics->peak_value) << ','
          << format_full(row.metrics->mp_pct) << ','
          << format_full(row.metrics->tp) << ',' << format_full(row.metrics->tr)
          << ',' << format_full(row.metrics->ts) << ','
          << format_full(row.metrics->ess) << ','
          << format_full(row.metrics->final_value) << ',';
    } else {
      out << ",,,,,,,";
    }
    out << csv_field(poles_text(row.poles)) << '\n';
  }
}

}  // namespace avrpid
