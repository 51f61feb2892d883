#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rfsense/closed_form.hpp"
#include "rfsense/errors.hpp"
#include "rfsense/measurement.hpp"
#include "rfsense/optimizer.hpp"

using namespace rfsense;
using doctest::Approx;

TEST_CASE("golden section on a parabola and a quartic") {
  const auto m = golden_section_minimize([](double x) { return (x - 1.3) * (x - 1.3) + 2; }, -4, 7);
  CHECK(m.x == Approx(1.3).epsilon(1e-7));
  CHECK(m.f == Approx(2.0));
  const auto q = golden_section_minimize([](double x) { return std::pow(x + 0.5, 4); }, 3, -3);
  CHECK(std::abs(q.x + 0.5) < 1e-3);
  CHECK(q.iterations > 0);
}

TEST_CASE("grid search skips failing points") {
  const auto f = [](double x) {
    if (x > 2.0) throw UnstableModelError("unstable", 1.0);
    if (x < 0.2) return std::numeric_limits<double>::quiet_NaN();
    return std::cos(3 * x);
  };
  const GridMinimum g = grid_then_golden(f, 0.0, 3.0, 301);
  CHECK(g.x == Approx(constants::pi / 3).epsilon(1e-7));
  CHECK(g.skipped == 20 + 100);
  CHECK_THROWS_AS(grid_then_golden([](double) -> double { throw UnstableModelError("x", 1); }, 0, 1),
                  UnstableModelError);
  CHECK_THROWS_AS(grid_then_golden(f, 0, 1, 2), DomainError);
}

TEST_CASE("numeric Gamma2 optimum at the reference point") {
  const SystemParams p;
  const Gamma2Optimum o = maximize_over_gamma2(p);
  const double predicted = coop_rf_for_w(p, w_opt(noise_params(p).xi));
  CHECK(std::abs(o.coop_rf - predicted) < 0.5);
  CHECK(o.r == Approx(4.43).epsilon(0.01));
  CHECK(o.w == Approx(0.939).epsilon(0.01));
  CHECK(o.excluded_points == 0);
  // A brute scan of the same objective cannot beat it.
  SystemParams q = p;
  for (int i = 0; i <= 400; ++i) {
    q.coop_rf = 200.0 * i / 400.0;
    CHECK(snr_per_unit_matrix(q) <= o.snr_per_unit * (1 + 1e-9));
  }
}

TEST_CASE("no enhancement above the threshold") {
  SystemParams p;
  p.detection = Detection::efficiency(1e-4);
  REQUIRE(noise_params(p).xi > xi_bar());
  const Gamma2Optimum o = maximize_over_gamma2(p);
  CHECK(o.coop_rf < 1e-6 * 10 * 61);
  CHECK(o.r == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Gamma2 search without optical cooling") {
  SystemParams p;
  p.coop_optical = 0.0;
  const Gamma2Optimum o = maximize_over_gamma2(p);
  CHECK(o.r >= 1.0);
  CHECK(std::isfinite(o.snr_per_unit));
}

TEST_CASE("Gamma2 bracket must be wide enough") {
  CHECK_THROWS_AS(maximize_over_gamma2(SystemParams{}, 100.0), DomainError);
  CHECK_NOTHROW(maximize_over_gamma2(SystemParams{}, 610.0));
}

TEST_CASE("numeric denominator minimum") {
  for (double xi : {0.01, 0.05, 0.09}) {
    const DenominatorMinimum m = minimize_denominator(xi);
    const auto brute = oracle::d_min_brute(xi);
    REQUIRE(m.local_w.has_value());
    CHECK(*m.local_w == Approx(brute.first).epsilon(1e-6));
    CHECK(*m.local_d == Approx(brute.second).epsilon(1e-10));
    CHECK(*m.local_w == Approx(local_w_opt(xi)).epsilon(1e-8));
    CHECK(m.d == Approx(std::min(1.0, brute.second)).epsilon(1e-10));
  }
  const DenominatorMinimum tangent = minimize_denominator(1.0 / 9.0);
  REQUIRE(tangent.local_w.has_value());
  CHECK(std::abs(*tangent.local_w - 1.0 / 3.0) < 1e-4);
  CHECK(tangent.w == 0.0);
  CHECK(tangent.d == 1.0);

  const DenominatorMinimum none = minimize_denominator(0.2);
  CHECK_FALSE(none.local_w.has_value());
  CHECK(none.w == 0.0);
  CHECK(none.d == 1.0);
  CHECK_THROWS_AS(minimize_denominator(0.0), DomainError);
}

TEST_CASE("numeric threshold agrees with the radical") {
  const double x = find_xi_bar_numeric();
  CHECK(x == Approx(xi_bar()).epsilon(1e-10));
  CHECK(denominator(local_w_opt(0.05), 0.05) - 1.0 < 0.0);
  CHECK(denominator(local_w_opt(0.11), 0.11) - 1.0 > 0.0);
}
