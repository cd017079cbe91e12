#include "avrpid/tuners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avrpid/errors.hpp"
#include "avrpid/rng.hpp"

namespace avrpid {

void Bounds::validate() const {
  if (lower.empty() || lower.size() != upper.size()) {
    throw InvalidParameterError("bounds need matching nonempty lower/upper");
  }
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) ||
        !(lower[d] < upper[d])) {
      throw InvalidParameterError("each dimension needs lower < upper");
    }
  }
}

double Bounds::clamp(double x, std::size_t d) const {
  return std::min(std::max(x, lower[d]), upper[d]);
}

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Pso: return "pso";
    case Algorithm::De: return "de";
    case Algorithm::Goa: return "goa";
  }
  return "?";
}

void OptimizerConfig::validate() const {
  if (population < 2) throw InvalidParameterError("population must be >= 2");
  if (iterations < 1) throw InvalidParameterError("iterations must be >= 1");
}

namespace {

constexpr double kNonFinitePenalty = 1e9;

double guarded(const ObjectiveFn& f, const std::vector<double>& x) {
  const double v = f(x);
  return std::isfinite(v) ? v : kNonFinitePenalty;
}

std::vector<std::vector<double>> initial_population(const Bounds& bounds,
                                                    std::size_t population,
                                                    std::uint64_t seed) {
  std::vector<std::vector<double>> x(population,
                                     std::vector<double>(bounds.dim()));
  for (std::size_t i = 0; i < population; ++i) {
    RngStream rng(seed, 0, i);
    for (std::size_t d = 0; d < bounds.dim(); ++d) {
      x[i][d] = rng.uniform(bounds.lower[d], bounds.upper[d]);
    }
  }
  return x;
}

// strict < keeps the earlier-found candidate on ties
struct BestTracker {
  std::vector<double> best;
  double value = std::numeric_limits<double>::infinity();

  void consider(const std::vector<double>& x, double v) {
    if (v < value) {
      value = v;
      best = x;
    }
  }
};

}  // namespace

namespace detail {

void pso_update(PsoSwarm& swarm, const Bounds& bounds, const PsoParams& params,
                double inertia, std::uint64_t seed, std::size_t iteration) {
  const std::size_t dim = bounds.dim();
  for (std::size_t i = 0; i < swarm.positions.size(); ++i) {
    RngStream rng(seed, iteration, i);
    for (std::size_t d = 0; d < dim; ++d) {
      const double span = bounds.upper[d] - bounds.lower[d];
      const double vmax = params.velocity_fraction * span;
      double v = inertia * swarm.velocities[i][d] +
                 params.cognitive * rng.uniform() *
                     (swarm.pbest[i][d] - swarm.positions[i][d]) +
                 params.social * rng.uniform() *
                     (swarm.gbest[d] - swarm.positions[i][d]);
      v = std::min(std::max(v, -vmax), vmax);
      swarm.velocities[i][d] = v;
      swarm.positions[i][d] = bounds.clamp(swarm.positions[i][d] + v, d);
    }
  }
}

std::vector<double> de_trial(const std::vector<std::vector<double>>& population,
                             std::size_t i, const Bounds& bounds,
                             const DeParams& params, std::uint64_t seed,
                             std::size_t iteration) {
  const std::size_t pop = population.size();
  const std::size_t dim = bounds.dim();
  RngStream rng(seed, iteration, i);

  std::size_t r1, r2, r3;
  do { r1 = rng.below(pop); } while (r1 == i);
  do { r2 = rng.below(pop); } while (r2 == i || r2 == r1);
  do { r3 = rng.below(pop); } while (r3 == i || r3 == r1 || r3 == r2);

  const std::size_t j_rand = rng.below(dim);
  std::vector<double> trial = population[i];
  for (std::size_t d = 0; d < dim; ++d) {
    const bool take = rng.uniform() < params.crossover || d == j_rand;
    if (take) {
      trial[d] = bounds.clamp(population[r1][d] +
                                  params.weight * (population[r2][d] -
                                                   population[r3][d]),
                              d);
    }
  }
  return trial;
}

}  // namespace detail

double goa_social(double r, const GoaParams& params) {
  return params.attract * std::exp(-r / params.scale) - std::exp(-r);
}

std::vector<std::vector<double>> goa_position_update(const GoaState& state) {
  const std::size_t n = state.positions.size();
  if (n == 0) throw InvalidParameterError("need at least one grasshopper");
  const std::size_t dim = state.bounds.dim();
  std::vector<std::vector<double>> next(n, std::vector<double>(dim));

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> sum(dim, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double dist2 = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = state.positions[j][d] - state.positions[i][d];
        dist2 += diff * diff;
      }
      const double dist = std::max(std::sqrt(dist2), 1e-12);
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = state.positions[j][d] - state.positions[i][d];
        const double half_span =
            0.5 * (state.bounds.upper[d] - state.bounds.lower[d]);
        sum[d] += state.c * half_span *
                  goa_social(std::abs(diff), state.params) * diff / dist;
      }
    }
    for (std::size_t d = 0; d < dim; ++d) {
      next[i][d] = state.bounds.clamp(state.c * sum[d] + state.target[d], d);
    }
  }
  return next;
}

OptimizerResult run_pso(const ObjectiveFn& objective, const Bounds& bounds,
                        const OptimizerConfig& cfg) {
  bounds.validate();
  cfg.validate();
  const std::size_t dim = bounds.dim();

  detail::PsoSwarm swarm;
  swarm.positions = initial_population(bounds, cfg.population, cfg.seed);
  swarm.velocities.assign(cfg.population, std::vector<double>(dim, 0.0));
  swarm.pbest = swarm.positions;

  std::vector<double> pval(cfg.population);
  BestTracker best;
  for (std::size_t i = 0; i < cfg.population; ++i) {
    pval[i] = guarded(objective, swarm.positions[i]);
    best.consider(swarm.positions[i], pval[i]);
  }
  swarm.gbest = best.best;

  OptimizerResult result;
  result.history.reserve(cfg.iterations);
  result.history.push_back(best.value);
  result.evaluations = cfg.population;

  const std::size_t updates = cfg.iterations - 1;
  for (std::size_t k = 1; k <= updates; ++k) {
    const double inertia =
        cfg.pso.inertia_start -
        (cfg.pso.inertia_start - cfg.pso.inertia_end) *
            (updates > 1 ? static_cast<double>(k - 1) /
                               static_cast<double>(updates - 1)
                         : 0.0);
    detail::pso_update(swarm, bounds, cfg.pso, inertia, cfg.seed, k);
    for (std::size_t i = 0; i < cfg.population; ++i) {
      const double v = guarded(objective, swarm.positions[i]);
      ++result.evaluations;
      if (v < pval[i]) {
        pval[i] = v;
        swarm.pbest[i] = swarm.positions[i];
      }
      best.consider(swarm.positions[i], v);
    }
    swarm.gbest = best.best;
    result.history.push_back(best.value);
  }
  result.best = best.best;
  result.best_value = best.value;
  return result;
}

OptimizerResult run_de(const ObjectiveFn& objective, const Bounds& bounds,
                       const OptimizerConfig& cfg) {
  bounds.validate();
  cfg.validate();

  auto population = initial_population(bounds, cfg.population, cfg.seed);
  std::vector<double> fitness(cfg.population);
  BestTracker best;
  for (std::size_t i = 0; i < cfg.population; ++i) {
    fitness[i] = guarded(objective, population[i]);
    best.consider(population[i], fitness[i]);
  }

  OptimizerResult result;
  result.history.reserve(cfg.iterations);
  result.history.push_back(best.value);
  result.evaluations = cfg.population;

  for (std::size_t k = 1; k < cfg.iterations; ++k) {
    const auto parents = population;  // donors come from the old generation
    for (std::size_t i = 0; i < cfg.population; ++i) {
      const auto trial = detail::de_trial(parents, i, bounds, cfg.de, cfg.seed, k);
      const double v = guarded(objective, trial);
      ++result.evaluations;
      if (v < fitness[i]) {  // greedy selection, parent wins ties
        fitness[i] = v;
        population[i] = trial;
      }
      best.consider(trial, v);
    }
    result.history.push_back(best.value);
  }
  result.best = best.best;
  result.best_value = best.value;
  return result;
}

OptimizerResult run_goa(const ObjectiveFn& objective, const Bounds& bounds,
                        const OptimizerConfig& cfg) {
  bounds.validate();
  cfg.validate();

  GoaState state;
  state.bounds = bounds;
  state.params = cfg.goa;
  state.positions = initial_population(bounds, cfg.population, cfg.seed);

  BestTracker best;
  for (std::size_t i = 0; i < cfg.population; ++i) {
    best.consider(state.positions[i], guarded(objective, state.positions[i]));
  }
  state.target = best.best;

  OptimizerResult result;
  result.history.reserve(cfg.iterations);
  result.history.push_back(best.value);
  result.evaluations = cfg.population;

  const std::size_t updates = cfg.iterations - 1;
  for (std::size_t k = 1; k <= updates; ++k) {
    state.c = cfg.goa.c_max - (cfg.goa.c_max - cfg.goa.c_min) *
                                  static_cast<double>(k) /
                                  static_cast<double>(updates);
    state.positions = goa_position_update(state);
    for (std::size_t i = 0; i < cfg.population; ++i) {
      best.consider(state.positions[i], guarded(objective, state.positions[i]));
      ++result.evaluations;
    }
    state.target = best.best;
    result.history.push_back(best.value);
  }
  result.best = best.best;
  result.best_value = best.value;
  return result;
}

OptimizerResult optimize(const ObjectiveFn& objective, const Bounds& bounds,
                         const OptimizerConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::Pso: return run_pso(objective, bounds, cfg);
    case Algorithm::De: return run_de(objective, bounds, cfg);
    case Algorithm::Goa: return run_goa(objective, bounds, cfg);
  }
  throw InvalidParameterError("unknown algorithm");
}

double phase_crossing_frequency(const TransferFunction& tf, double target_rad) {
  constexpr double kStart = 1e-6;
  constexpr double kLimit = 1e12;
  constexpr double kStep = 1.2;

  auto at = [&](double w) { return tf(std::complex<double>(0.0, w)); };

  double lo = kStart;
  std::complex<double> lo_val = at(lo);
  double lo_phase = std::arg(lo_val);
  if (lo_phase <= target_rad) {
    throw NotTunableError("phase already beyond the target at the scan start");
  }

  double hi = lo;
  double hi_phase = lo_phase;
  std::complex<double> hi_val = lo_val;
  while (hi_phase > target_rad) {
    lo = hi;
    lo_phase = hi_phase;
    lo_val = hi_val;
    hi = hi * kStep;
    if (hi > kLimit) {
      throw NotTunableError("loop phase never reaches the target");
    }
    hi_val = at(hi);
    hi_phase = lo_phase + std::arg(hi_val / lo_val);
  }

  while ((hi - lo) > 1e-9 * lo) {
    const double mid = std::sqrt(lo * hi);
    const std::complex<double> mid_val = at(mid);
    const double mid_phase = lo_phase + std::arg(mid_val / lo_val);
    if (mid_phase > target_rad) {
      lo = mid;
      lo_phase = mid_phase;
      lo_val = mid_val;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo * hi);
}

std::pair<double, double> ultimate_gain(const AvrParams& p) {
  p.validate();
  const TransferFunction unity_loop =
      tf_series(tf_series(block_tf(p.ka, p.ta), block_tf(p.ke, p.te)),
                tf_series(block_tf(p.kg, p.tg), block_tf(p.ks, p.ts)));
  const double w180 = phase_crossing_frequency(unity_loop, -M_PI);
  const double ku = 1.0 / std::abs(unity_loop(std::complex<double>(0.0, w180)));
  const double tu = 2.0 * M_PI / w180;
  return {ku, tu};
}

PidGains ziegler_nichols(const AvrParams& p) {
  const auto [ku, tu] = ultimate_gain(p);
  return {0.6 * ku, 1.2 * ku / tu, 0.075 * ku * tu};
}

}  // namespace avrpid
