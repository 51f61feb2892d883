#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rfsense/closed_form.hpp"
#include "rfsense/errors.hpp"

using namespace rfsense;
using doctest::Approx;

TEST_CASE("four-mode u and w at zero detuning and phase") {
  const UW x = uw_four(60, 30, 0, 0, 500, 6545, 1636);
  CHECK(x.u == Approx(8181.0 / 60.5).epsilon(1e-14));
  CHECK(x.w == Approx(30 / 60.5).epsilon(1e-14));
  CHECK(uw_four(60, 0, 100, 1, 500, 6545, 1636).w == 0.0);
}

TEST_CASE("reference u with rounded and with exact occupancies") {
  CHECK(std::abs(uw_four(60, 0, 0, 0, 500, 6545, 1636).u - 135.22) <= 0.01);
  const SystemParams p;
  CHECK(uw(p).u == Approx(135.2318).epsilon(1e-6));
}

TEST_CASE("four-mode u and w agree with the retyped formula") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const double g1 = oracle::uniform(rng, 0, 200), g2 = oracle::uniform(rng, 0, 200);
    const double gm = oracle::log_uniform(rng, 10, 5000);
    const double d = oracle::uniform(rng, -5, 5) * gm, phi = oracle::uniform(rng, -3.1, 3.1);
    const double n1 = oracle::log_uniform(rng, 1, 1e5), n2 = oracle::log_uniform(rng, 1, 1e5);
    const UW x = uw_four(g1, g2, d, phi, gm, n1, n2);
    const auto ref = oracle::uw_four(g1, g2, d, phi, gm, n1, n2);
    CHECK(x.u == Approx(ref[0]).epsilon(1e-12));
    CHECK(x.w == Approx(ref[1]).epsilon(1e-12));
  }
}

TEST_CASE("three-mode u and w") {
  CHECK(std::abs(uw_three(60, 0, 1636).u - 107.28) <= 0.01);
  CHECK(uw_three(60, 5, 0).u == 0.0);
  CHECK(uw_three(60, 61, 1000).w == 1.0);
}

TEST_CASE("closed forms reject unequal four-mode dampings") {
  SystemParams p;
  p.gamma_m2 = 600;
  CHECK_THROWS_AS(uw(p), PreconditionError);
  p.topology = Topology::ThreeModeHigh;
  CHECK_NOTHROW(uw(p));
}

TEST_CASE("optimal detuning") {
  CHECK(delta_opt(60, 500, 0) == 0.0);
  CHECK(delta_opt(60, 500, constants::pi / 2) == Approx(500 * 60.5));
  CHECK_THROWS_AS(delta_opt(60, 500, constants::pi), DomainError);

  // Grid scan of u(delta) at phi = 1.
  const double gm = 500, g1 = 60, phi = 1.0;
  const double span = 10 * gm * (0.5 + g1);
  double best_d = 0, best_u = 1e300;
  for (int i = 0; i <= 10000; ++i) {
    const double d = -span + 2 * span * i / 10000.0;
    const double u = oracle::uw_four(g1, 1, d, phi, gm, 6545, 1636)[0];
    if (u < best_u) {
      best_u = u;
      best_d = d;
    }
  }
  const double d_star = delta_opt(g1, gm, phi);
  CHECK(std::abs(best_d - d_star) <= 2 * span / 10000.0);
  CHECK(uw_four(g1, 1, d_star, phi, gm, 6545, 1636).u <= best_u * (1 + 1e-12));
}

TEST_CASE("small parameters") {
  SystemParams p;
  p.coop_rf = coop_rf_for_w(p, w_opt(noise_params(p).xi));
  const SmallParams s = small_params(p);
  CHECK(s.v.real() == Approx(0.8125).epsilon(1e-3));
  CHECK(std::abs(s.X) < 1e-2);
  CHECK(std::abs(s.Y) < 1e-2);
  CHECK(std::abs(s.v) > 0.0);
  CHECK(std::abs(s.omega_lc_shift) < 1e-3 * p.omega_lc);

  // omega_X -> 0 and gamma_LC -> 0 leave v = 1/4.
  SystemParams q;
  q.gamma_lc = 1e-9;
  q.delta = 0.5 * (q.omega_2 - q.omega_1);
  CHECK(std::abs(perturbation_shifts(q).v - cplx(0.25, 0)) < 1e-12);

  p.bare.rf[0] = 0.0;
  CHECK_THROWS_AS(small_params(p), DomainError);
  p.coop_rf = 0.0;
  CHECK_NOTHROW(small_params(p));
}

TEST_CASE("closed-form SNR special cases") {
  SystemParams p;
  const NoiseParams np = noise_params(p);
  const double eta = p.efficiency();
  const double k = std::pow(p.omega_lc / p.gamma_lc, 2);
  const double n_a2 = occupancies(p).n_a2;
  CHECK(snr_closed_per_unit(eta, p.omega_lc, p.gamma_lc, n_a2, np.u, 0) ==
        Approx(16 * eta * k / np.sigma).epsilon(1e-13));
  CHECK(snr_closed_per_unit(eta, p.omega_lc, p.gamma_lc, n_a2, np.u, 1) ==
        Approx(eta * k / np.rho).epsilon(1e-13));
  CHECK(snr0_per_unit(eta, p.omega_lc, p.gamma_lc, np.sigma) == Approx(16 * eta * k / np.sigma));
  CHECK(snr_im_per_unit(eta, p.omega_lc, p.gamma_lc, np.rho) == Approx(eta * k / np.rho));
  p.tau = 3;
  p.epsilon = 2e-6;
  p.beta = cplx(0, 2);
  CHECK(snr_closed(p, np.u, 0.5, 0, 0) ==
        Approx(3 * 4e-12 * 4 * oracle::snr_unit(eta, p.omega_lc, p.gamma_lc, occupancies(p).n_a2, np.u, 0.5)));
}

TEST_CASE("noise parameters on the reference set") {
  SystemParams p;
  p.detection = Detection::efficiency(1.0 / 11.0);
  const NoiseParams np = noise_params(p);
  CHECK(np.rho == Approx(7.1469).epsilon(1e-4));
  CHECK(np.sigma == Approx(476.98).epsilon(1e-4));
  CHECK(np.xi == Approx(0.0149835).epsilon(1e-4));
  CHECK(r_im(np.rho, np.sigma) == Approx(4.17).epsilon(0.01));
  CHECK(r_max(np.xi) == Approx(4.43).epsilon(0.005));
}

TEST_CASE("threshold constant") {
  CHECK(std::abs(xi_bar() - 0.0973) <= 2e-4);
  CHECK(xi_bar() < 1.0 / 9.0);
  // Independent bisection on d(w_opt(xi)) = 1 with the retyped polynomial.
  double lo = 1e-6, hi = 1.0 / 9.0 - 1e-6;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double w = 1.5 * (1.0 / 3 - mid + std::sqrt((1 - mid) * (1.0 / 9 - mid)));
    (oracle::d_of_w(w, mid) < 1.0 ? lo : hi) = mid;
  }
  CHECK(std::abs(xi_bar() - 0.5 * (lo + hi)) < 1e-10);
}

TEST_CASE("optimal matching parameter") {
  CHECK(std::abs(w_opt(1e-9) - 1.0) < 1e-6);
  CHECK(w_opt(xi_bar()) == Approx(0.5215).epsilon(0.001 / 0.5215));
  CHECK(local_w_opt(1.0 / 9.0) == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(w_opt(0.2) == 0.0);
  CHECK(w_opt(xi_bar() * (1 + 1e-12)) == 0.0);
  CHECK_THROWS_AS(w_opt(0.0), DomainError);
  CHECK_THROWS_AS(local_w_opt(0.2), DomainError);
  double prev = 2.0;
  for (int i = 1; i <= 500; ++i) {
    const double xi = (1.0 / 9.0) * i / 500.0;
    const double w = local_w_opt(xi);
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("w_opt is the global minimizer of the denominator below the threshold") {
  for (double xi : {1e-4, 0.01, 0.03, 0.05, 0.08, 0.095}) {
    const double w_star = w_opt(xi);
    const double d_star = denominator(w_star, xi);
    for (int i = 0; i <= 30000; ++i) {
      const double w = 3.0 * i / 30000.0;
      if (std::abs(w - w_star) < 1e-4) continue;
      if (!(d_star < oracle::d_of_w(w, xi))) {
        FAIL("d(w_opt) not minimal at xi = " << xi << ", w = " << w);
      }
    }
    const auto brute = oracle::d_min_brute(xi);
    CHECK(w_star == Approx(brute.first).epsilon(1e-6));
    CHECK(denominator_local_min(xi) == Approx(brute.second).epsilon(1e-10));
  }
}

TEST_CASE("r_max continuity, monotonicity and bound") {
  CHECK(std::abs(r_max(xi_bar() * (1 - 1e-12)) - 1.0) < 1e-6);
  CHECK(r_max(xi_bar()) == 1.0);
  CHECK(r_max(0.5) == 1.0);
  double prev = 1e300;
  for (int i = 1; i <= 200; ++i) {
    const double xi = xi_bar() * i / 201.0;
    const double r = r_max(xi);
    CHECK(r < prev);
    CHECK(r >= 1.0 / (16.0 * xi));
    prev = r;
  }
  // r_im approaches r_max as xi -> 0.
  CHECK(r_max(1e-7) * 16e-7 == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("maximum SNR matches the denominator minimum") {
  for (double sigma : {10.0, 477.0, 5000.0}) {
    for (double rho : {1.5, 7.1, 20.0}) {
      const double xi = rho / sigma;
      const double eta = 0.1, omega = 5e6, gamma = 6e3;
      const double n_a2 = (sigma - 1) / (2 * eta);
      const double u = 2 * (rho - 1) / eta;
      double best = 0.0;
      for (int i = 0; i <= 40000; ++i) {
        best = std::max(best, oracle::snr_unit(eta, omega, gamma, n_a2, u, 2.0 * i / 40000.0));
      }
      CHECK(snr_max_per_unit(eta, omega, gamma, rho, sigma) == Approx(best).epsilon(1e-6));
      CHECK(r_max(xi) == Approx(best / snr0_per_unit(eta, omega, gamma, sigma)).epsilon(1e-6));
    }
  }
}

TEST_CASE("relative SNR") {
  CHECK(r_relative(0.1, 2600, 130, 0) == Approx(1.0));
  const double eta = 0.1, n = 2600, u = 130;
  const NoiseParams np = noise_params(u, 1, eta, n);
  CHECK(r_relative(eta, n, u, 1) == Approx(r_im(np.rho, np.sigma)).epsilon(1e-13));
}

TEST_CASE("detection efficiency and thresholds") {
  CHECK(detection_efficiency(100, 0.1) == Approx(1.0 / 11.0));
  CHECK(detection_efficiency(0, 0.1) == 1.0);
  CHECK_THROWS_AS(detection_efficiency(-1, 0.1), DomainError);

  const SystemParams p;
  const double n_a2 = occupancies(p).n_a2;
  const double u = uw(p).u;
  const auto t = eta_threshold(n_a2, u);
  REQUIRE(t.has_value());
  CHECK(*t == Approx(2.04e-3).epsilon(0.01));
  // Oracle: bisection on eta for r_max = 1.
  double lo = 1e-6, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    const double xi = (1 + mid * u / 2) / (1 + 2 * mid * n_a2);
    (xi < xi_bar() ? hi : lo) = mid;
  }
  CHECK(*t == Approx(std::sqrt(lo * hi)).epsilon(1e-8));
  CHECK_FALSE(eta_threshold(10, 100).has_value());
}

TEST_CASE("zeta threshold separates enhancement from no enhancement") {
  SystemParams p;
  const double check = u_check(p.topology, p.coop_optical, p.omega_lc, p.omega_1, p.omega_2);
  const double z = zeta_threshold(p.omega_lc, check, p.temperature);
  REQUIRE(z > 0);
  p.detection = Detection::noise_coefficient(0.5 * z);
  CHECK(r_max(noise_params(p).xi) > 1.0);
  p.detection = Detection::noise_coefficient(2.0 * z);
  CHECK(r_max(noise_params(p).xi) == 1.0);
  CHECK(u_check(Topology::ThreeModeHigh, 60, 5e6, 2e6, 8e6) == Approx(4.0 / (61 * 8e6)));
  CHECK(u_check(Topology::ThreeModeLow, 60, 5e6, 2e6, 8e6) == Approx(4.0 / (61 * 2e6)));
}

TEST_CASE("three- versus four-mode crossover predicate") {
  CHECK(crossover_3v4(5e6, 8e6));
  CHECK_FALSE(crossover_3v4(2.0 / 3.0 * 9e6, 9e6));
  CHECK_FALSE(crossover_3v4(6e6, 8e6));
}

TEST_CASE("Gamma2 for a target w") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    SystemParams p = oracle::random_symmetric(rng, oracle::topology_at(i));
    const double w = oracle::uniform(rng, 0, 3);
    p.coop_rf = coop_rf_for_w(p, w);
    CHECK(uw(p).w == Approx(w).epsilon(1e-12));
  }
  CHECK_THROWS_AS(coop_rf_for_w(SystemParams{}, -1), DomainError);
}
