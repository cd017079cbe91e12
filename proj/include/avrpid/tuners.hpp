#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "avrpid/avr.hpp"

namespace avrpid {

using ObjectiveFn = std::function<double(const std::vector<double>&)>;

/// Per-dimension search box. The default PID box [0.01, 2]^3 covers every
/// published gain set with margin.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  static Bounds pid_default() { return {{0.01, 0.01, 0.01}, {2.0, 2.0, 2.0}}; }
  std::size_t dim() const { return lower.size(); }
  void validate() const;
  double clamp(double x, std::size_t d) const;
};

enum class Algorithm { Pso, De, Goa };

const char* algorithm_name(Algorithm a);

struct PsoParams {
  double inertia_start = 0.9;
  double inertia_end = 0.4;
  double cognitive = 2.0;
  double social = 2.0;
  double velocity_fraction = 0.2;  // of each dimension's range
};

struct DeParams {
  double weight = 0.5;     // F
  double crossover = 0.9;  // CR
};

struct GoaParams {
  double attract = 0.5;  // f in the social function
  double scale = 1.5;    // l in the social function
  double c_max = 1.0;
  double c_min = 1e-5;
};

struct OptimizerConfig {
  std::size_t population = 50;
  std::size_t iterations = 100;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::Pso;
  PsoParams pso;
  DeParams de;
  GoaParams goa;

  void validate() const;  // population >= 2, iterations >= 1
};

/// history[0] is the best of the evaluated initial population; each later
/// entry is the best-so-far after one update generation, so the sequence is
/// non-increasing and best_value == history.back().
struct OptimizerResult {
  std::vector<double> best;
  double best_value = 0.0;
  std::vector<double> history;
  std::size_t evaluations = 0;
};

/// Dispatch on cfg.algorithm. Non-finite objective values are treated as a
/// 1e9 penalty and the run continues. Deterministic given the seed.
OptimizerResult optimize(const ObjectiveFn& objective, const Bounds& bounds,
                         const OptimizerConfig& cfg);

OptimizerResult run_pso(const ObjectiveFn& objective, const Bounds& bounds,
                        const OptimizerConfig& cfg);
OptimizerResult run_de(const ObjectiveFn& objective, const Bounds& bounds,
                       const OptimizerConfig& cfg);
OptimizerResult run_goa(const ObjectiveFn& objective, const Bounds& bounds,
                        const OptimizerConfig& cfg);

/// Swarm snapshot for one grasshopper position update.
struct GoaState {
  std::vector<std::vector<double>> positions;
  std::vector<double> target;  // best solution so far, per dimension
  Bounds bounds;
  double c = 1.0;  // diminishing coefficient
  GoaParams params;
};

/// s(r) = f e^{-r/l} - e^{-r}; s(0) = f - 1.
double goa_social(double r, const GoaParams& params = {});

/// One position update: X_i = c * sum_{j != i} c (ub-lb)/2 s(|xj_d - xi_d|)
/// (xj - xi)/d_ij + target, clamped to bounds. d_ij is the Euclidean
/// distance floored at 1e-12. A single grasshopper lands on the target.
std::vector<std::vector<double>> goa_position_update(const GoaState& state);

namespace detail {

struct PsoSwarm {
  std::vector<std::vector<double>> positions;
  std::vector<std::vector<double>> velocities;
  std::vector<std::vector<double>> pbest;
  std::vector<double> gbest;
};

/// In-place velocity/position update (no evaluation).
void pso_update(PsoSwarm& swarm, const Bounds& bounds, const PsoParams& params,
                double inertia, std::uint64_t seed, std::size_t iteration);

/// DE/rand/1/bin trial vector for member i, clamped to bounds.
std::vector<double> de_trial(const std::vector<std::vector<double>>& population,
                             std::size_t i, const Bounds& bounds,
                             const DeParams& params, std::uint64_t seed,
                             std::size_t iteration);

}  // namespace detail

/// Frequency where the unwrapped phase of tf first reaches the target (rad).
/// Throws NotTunableError when no crossing exists.
double phase_crossing_frequency(const TransferFunction& tf, double target_rad);

/// Ultimate-cycle quantities of the proportional-only loop: Ku = 1/|L(j w180)|
/// at the -180 degree crossing, Tu = 2 pi / w180.
std::pair<double, double> ultimate_gain(const AvrParams& p);

/// Classic closed-loop table: Kp = 0.6 Ku, Ki = 1.2 Ku/Tu, Kd = 0.075 Ku Tu.
PidGains ziegler_nichols(const AvrParams& p);

}  // namespace avrpid
