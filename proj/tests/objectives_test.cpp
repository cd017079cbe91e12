#include <cmath>

#include "avrpid/avr.hpp"
#include "avrpid/errors.hpp"
#include "avrpid/objectives.hpp"
#include "avrpid/polynomial.hpp"
#include "doctest.h"

using namespace avrpid;

namespace {

// response whose error signal is e(t) = reference - v(t)
StepResponse synthetic(double dt, double horizon,
                       double (*error)(double), double reference = 1.0) {
  StepResponse r;
  r.grid = {dt, horizon};
  r.reference = reference;
  r.v.resize(r.grid.n_samples());
  for (std::size_t k = 0; k < r.v.size(); ++k) {
    r.v[k] = reference - error(r.grid.time_at(k));
  }
  return r;
}

double unit_error(double) { return 1.0; }
double decaying_error(double t) { return std::exp(-t); }
double zero_error(double) { return 0.0; }

}  // namespace

TEST_SUITE("objectives") {

TEST_CASE("integral indices on a constant error") {
  const StepResponse r = synthetic(1e-3, 2.0, unit_error);
  CHECK(integral_index(ObjectiveKind::Iae, r) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(integral_index(ObjectiveKind::Itae, r) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(integral_index(ObjectiveKind::Ise, r) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(integral_index(ObjectiveKind::Itse, r) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(integral_index(ObjectiveKind::Rmse, r) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integral indices vanish with the error") {
  const StepResponse r = synthetic(1e-3, 2.0, zero_error);
  for (ObjectiveKind k : {ObjectiveKind::Iae, ObjectiveKind::Itae,
                          ObjectiveKind::Ise, ObjectiveKind::Itse,
                          ObjectiveKind::Rmse}) {
    CHECK(integral_index(k, r) == 0.0);
  }
}

TEST_CASE("quadrature matches the closed forms for a decaying error") {
  const StepResponse r = synthetic(1e-3, 10.0, decaying_error);
  CHECK(integral_index(ObjectiveKind::Ise, r) ==
        doctest::Approx(0.5 * (1.0 - std::exp(-20.0))).epsilon(1e-6));
  CHECK(integral_index(ObjectiveKind::Iae, r) ==
        doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-6));
  CHECK(integral_index(ObjectiveKind::Itae, r) ==
        doctest::Approx(1.0 - 11.0 * std::exp(-10.0)).epsilon(1e-6));
  CHECK(integral_index(ObjectiveKind::Itse, r) ==
        doctest::Approx(0.25 * (1.0 - 21.0 * std::exp(-20.0))).epsilon(1e-6));
  CHECK(integral_index(ObjectiveKind::Rmse, r) ==
        doctest::Approx(std::sqrt(0.05 * (1.0 - std::exp(-20.0)))).epsilon(1e-6));
  // the literal printed variant reduces to IAE / horizon
  CHECK(integral_index(ObjectiveKind::Rmse, r, /*literal_rmse=*/true) ==
        doctest::Approx(integral_index(ObjectiveKind::Iae, r) / 10.0)
            .epsilon(1e-12));
}

TEST_CASE("scaling laws") {
  const StepResponse base = synthetic(1e-3, 6.0, decaying_error);
  StepResponse scaled = base;
  const double alpha = 3.0;
  for (std::size_t k = 0; k < scaled.v.size(); ++k) {
    scaled.v[k] = scaled.reference - alpha * (base.reference - base.v[k]);
  }
  CHECK(integral_index(ObjectiveKind::Iae, scaled) ==
        doctest::Approx(alpha * integral_index(ObjectiveKind::Iae, base))
            .epsilon(1e-12));
  CHECK(integral_index(ObjectiveKind::Itae, scaled) ==
        doctest::Approx(alpha * integral_index(ObjectiveKind::Itae, base))
            .epsilon(1e-12));
  CHECK(integral_index(ObjectiveKind::Ise, scaled) ==
        doctest::Approx(alpha * alpha * integral_index(ObjectiveKind::Ise, base))
            .epsilon(1e-12));
  CHECK(integral_index(ObjectiveKind::Itse, scaled) ==
        doctest::Approx(alpha * alpha *
                        integral_index(ObjectiveKind::Itse, base))
            .epsilon(1e-12));
  CHECK(integral_index(ObjectiveKind::Rmse, scaled) ==
        doctest::Approx(alpha * integral_index(ObjectiveKind::Rmse, base))
            .epsilon(1e-12));
}

TEST_CASE("indices grow with the horizon") {
  const StepResponse short_run = synthetic(1e-3, 4.0, decaying_error);
  const StepResponse long_run = synthetic(1e-3, 9.0, decaying_error);
  for (ObjectiveKind k : {ObjectiveKind::Iae, ObjectiveKind::Itae,
                          ObjectiveKind::Ise, ObjectiveKind::Itse}) {
    CHECK(integral_index(k, long_run) >= integral_index(k, short_run));
  }
}

TEST_CASE("weighted transient criterion") {
  TransientMetrics flat;
  flat.mp_pct = 0.0;
  flat.ess = 0.0;
  flat.ts = 1.0;
  flat.tr = 1.0;
  CHECK(zlg(flat, 1.0) == 0.0);

  TransientMetrics m;
  m.mp_pct = 10.0;  // enters as the 0.1 fraction
  m.ess = 0.01;
  m.ts = 1.0;
  m.tr = 0.2;
  CHECK(zlg(m, 1.0) == doctest::Approx(0.3638368144082952).epsilon(1e-12));
  // large beta leaves only the overshoot and steady-state terms
  CHECK(zlg(m, 50.0) == doctest::Approx(0.11).epsilon(1e-6));
  CHECK_THROWS_AS(zlg(m, 0.0), InvalidParameterError);
}

TEST_CASE("zlg depends only on the two grouped sums") {
  TransientMetrics a;
  a.mp_pct = 12.0;
  a.ess = 0.03;
  a.ts = 2.0;
  a.tr = 0.5;
  TransientMetrics b;  // same Mp+Ess and Ts-Tr, different split
  b.mp_pct = 9.0;
  b.ess = 0.06;
  b.ts = 2.6;
  b.tr = 1.1;
  for (double beta : {0.5, 0.8, 1.0, 1.5, 3.0}) {
    CHECK(zlg(a, beta) == doctest::Approx(zlg(b, beta)).epsilon(1e-15));
  }
}

TEST_CASE("combined criterion") {
  CHECK(combined_j(0.0, 0.0, 50.0) == 0.0);
  CHECK(combined_j(0.01, 0.4, 50.0) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(combined_j(0.5, 0.1, 40.0) < combined_j(0.5, 0.1, 60.0));
}

TEST_CASE("weighted objective family") {
  CHECK(weighted_of(ObjectiveKind::Of1, 0.7, 2.0, 0.2, 1.0, 0.0, 0.0) ==
        doctest::Approx(0.7));
  CHECK(weighted_of(ObjectiveKind::Of2, 0.5, 2.0, 0.2, 1.0, 0.1, 1.0) ==
        doctest::Approx(0.9).epsilon(1e-15));
  CHECK_THROWS_AS(weighted_of(ObjectiveKind::Itse, 1, 1, 1, 1, 1, 1),
                  InvalidParameterError);

  // OF3 with W2 = W3 = 0 collapses to the bare ITSE
  ObjectiveSpec of3;
  of3.kind = ObjectiveKind::Of3;
  of3.w1 = 1.0;
  of3.w2 = 0.0;
  of3.w3 = 0.0;
  ObjectiveSpec itse;
  itse.kind = ObjectiveKind::Itse;
  const PidGains g{1.1281, 0.9567, 0.5671};
  CHECK(evaluate_gains(AvrParams{}, g, of3).value ==
        doctest::Approx(evaluate_gains(AvrParams{}, g, itse).value)
            .epsilon(1e-12));
}

TEST_CASE("objective spec validation") {
  ObjectiveSpec spec;
  spec.mu = 10.0;
  CHECK(spec.warnings().size() == 1);
  spec.mu = 50.0;
  CHECK(spec.warnings().empty());
  spec.beta = 0.0;
  CHECK_THROWS_AS(spec.validate(), InvalidParameterError);
  spec.beta = 1.0;
  spec.w1 = spec.w2 = spec.w3 = 0.0;
  CHECK_THROWS_AS(spec.validate(), InvalidParameterError);
}

TEST_CASE("evaluate_gains on tuned and near-open-loop gains") {
  ObjectiveSpec spec;  // ITSE on the default 10 s grid
  const ObjectiveValue tuned =
      evaluate_gains(AvrParams{}, {1.0210, 1.8743, 0.1390}, spec);
  CHECK_FALSE(tuned.penalized);
  CHECK(tuned.value > 0.0);
  CHECK(tuned.metrics.has_value());

  const ObjectiveValue weak = evaluate_gains(AvrParams{}, {0.01, 0.01, 0.0}, spec);
  CHECK_FALSE(weak.penalized);
  CHECK(tuned.value < weak.value);
}

TEST_CASE("unstable gains are penalized without simulating") {
  ObjectiveSpec spec;
  const PidGains hot{100.0, 0.0, 0.0};
  // pole-check oracle: the characteristic polynomial has a root with
  // nonnegative real part
  const auto poles = poly_roots(avr_pid_closed_loop(AvrParams{}, hot).den());
  bool any_unstable = false;
  for (const auto& p : poles) any_unstable = any_unstable || p.real() >= 0.0;
  CHECK(any_unstable);

  const ObjectiveValue v = evaluate_gains(AvrParams{}, hot, spec);
  CHECK(v.penalized);
  CHECK(v.value >= 1e6);
}

TEST_CASE("all-zero gains are penalized, not crashed") {
  ObjectiveSpec spec;
  const ObjectiveValue v = evaluate_gains(AvrParams{}, {0.0, 0.0, 0.0}, spec);
  CHECK(v.penalized);
  CHECK(v.value >= 1e6);
}

TEST_CASE("evaluation is deterministic") {
  ObjectiveSpec spec;
  spec.kind = ObjectiveKind::Combined;
  const PidGains g{1.3825, 1.4608, 0.5462};
  const ObjectiveValue a = evaluate_gains(AvrParams{}, g, spec);
  const ObjectiveValue b = evaluate_gains(AvrParams{}, g, spec);
  CHECK(a.value == b.value);
  CHECK(a.penalized == b.penalized);
}

}  // TEST_SUITE
