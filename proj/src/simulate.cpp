#include "avrpid/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "avrpid/csv.hpp"
#include "avrpid/errors.hpp"
#include "avrpid/metrics.hpp"

namespace avrpid {

std::size_t SimGrid::n_samples() const {
  // tolerate horizons that are not exact binary multiples of dt
  return static_cast<std::size_t>(std::floor(horizon / dt + 1e-9)) + 1;
}

void SimGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidParameterError("grid dt must be positive");
  }
  if (!(horizon >= dt) || !std::isfinite(horizon)) {
    throw InvalidParameterError("grid horizon must be at least dt");
  }
}

StepResponse step_response(const StateSpaceModel& ss, const SimGrid& grid,
                           double amplitude) {
  grid.validate();
  const std::size_t n = grid.n_samples();
  auto [phi, gamma] =
      discretize_zoh(ss.a, Eigen::MatrixXd(ss.b), grid.dt);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ss.a.rows());

  StepResponse out;
  out.grid = grid;
  out.reference = amplitude;
  out.v.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double y = (ss.order() ? (ss.c * x)(0) : 0.0) + ss.d * amplitude;
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg << "state left the finite range at sample " << k << " (t = "
          << grid.time_at(k) << " s)";
      throw SimulationOverflowError(msg.str(), k);
    }
    out.v[k] = y;
    if (ss.order()) {
      x = phi * x + gamma.col(0) * amplitude;
    }
  }
  return out;
}

StepResponse scenario_response(const AvrParams& p,
                               const std::optional<PidGains>& g,
                               const std::vector<DisturbanceEvent>& events,
                               const SimGrid& grid) {
  grid.validate();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].time < 0.0 || events[i].time > grid.horizon) {
      throw InvalidParameterError("disturbance event outside the horizon");
    }
    if (i > 0 && events[i].time < events[i - 1].time) {
      throw InvalidParameterError("disturbance events must be sorted by time");
    }
    if (!std::isfinite(events[i].magnitude)) {
      throw InvalidParameterError("non-finite disturbance magnitude");
    }
  }

  const TransferFunction closed =
      g ? avr_pid_closed_loop(p, *g) : avr_closed_loop(p);
  const PoleZeroReport report = pole_zero_report(closed);
  if (!report.stable) {
    std::ostringstream msg;
    msg << "closed loop unstable; poles:";
    for (const auto& pole : report.poles) {
      msg << " (" << pole.real() << (pole.imag() < 0 ? " - " : " + ")
          << std::abs(pole.imag()) << "i)";
    }
    throw UnstableLoopError(msg.str());
  }

  const StateSpaceModel ref_ss = tf_to_state_space(closed);
  const StateSpaceModel dist_ss =
      tf_to_state_space(disturbance_closed_loop(p, g));

  // joint realization with inputs [reference, disturbance]
  const Eigen::Index n1 = ref_ss.a.rows();
  const Eigen::Index n2 = dist_ss.a.rows();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  a.topLeftCorner(n1, n1) = ref_ss.a;
  a.bottomRightCorner(n2, n2) = dist_ss.a;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n1 + n2, 2);
  b.block(0, 0, n1, 1) = ref_ss.b;
  b.block(n1, 1, n2, 1) = dist_ss.b;
  Eigen::RowVectorXd c(n1 + n2);
  c << ref_ss.c, dist_ss.c;

  auto [phi, gamma] = discretize_zoh(a, b, grid.dt);

  std::vector<std::size_t> onsets;
  onsets.reserve(events.size());
  for (const auto& e : events) {
    onsets.push_back(static_cast<std::size_t>(std::llround(e.time / grid.dt)));
  }

  const std::size_t n = grid.n_samples();
  StepResponse out;
  out.grid = grid;
  out.reference = 1.0;
  out.v.resize(n);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n1 + n2);
  Eigen::Vector2d u;
  for (std::size_t k = 0; k < n; ++k) {
    double d = 0.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (k >= onsets[i]) d += events[i].magnitude;
    }
    const double y = (c * x)(0) + ref_ss.d * 1.0 + dist_ss.d * d;
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg << "state left the finite range at sample " << k;
      throw SimulationOverflowError(msg.str(), k);
    }
    out.v[k] = y;
    u << 1.0, d;
    x = phi * x + gamma * u;
  }
  return out;
}

void write_response_csv(const StepResponse& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << "t,v\n";
  for (std::size_t k = 0; k < r.v.size(); ++k) {
    out << format_full(r.grid.time_at(k)) << ',' << format_full(r.v[k]) << '\n';
  }
}

StepResponse read_response_csv(const std::string& path, double reference) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read " + path);
  }
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,v", 0) != 0) {
    throw ParseError(path + ": expected a `t,v` header");
  }
  std::vector<double> t, v;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError(path + ": row " + std::to_string(row) + " is not `t,v`");
    }
    try {
      t.push_back(std::stod(line.substr(0, comma)));
      v.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ParseError(path + ": row " + std::to_string(row) +
                       " has a non-numeric field");
    }
  }
  if (t.size() < 2) {
    throw ParseError(path + ": need at least two samples");
  }
  StepResponse r;
  r.grid.dt = t[1] - t[0];
  r.grid.horizon = t.back();
  r.grid.validate();
  r.v = std::move(v);
  r.reference = reference;
  return r;
}

}  // namespace avrpid
