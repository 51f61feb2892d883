#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rfsense/closed_form.hpp"
#include "rfsense/errors.hpp"
#include "rfsense/measurement.hpp"

using namespace rfsense;
using doctest::Approx;

namespace {

SystemParams at_w(double w, PerturbationMode mode = PerturbationMode::Full) {
  SystemParams p;
  p.perturbation = mode;
  p.coop_rf = coop_rf_for_w(p, w);
  return p;
}

}  // namespace

TEST_CASE("homodyne phase") {
  CHECK(optimal_homodyne_phase(cplx(1, 0), cplx(1, 0)) == Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(optimal_homodyne_phase(cplx(-1, 0), cplx(1, 0))) == Approx(constants::pi));
  CHECK(optimal_homodyne_phase(cplx(1, 0), cplx(0, 1)) == Approx(-constants::pi / 2));
  const double ph = optimal_homodyne_phase(cplx(0.3, -0.7), cplx(2, 1));
  CHECK(ph > -constants::pi);
  CHECK(ph <= constants::pi);
  CHECK_THROWS_AS(optimal_homodyne_phase(cplx(0, 0), cplx(1, 0)), SignalNullError);
}

TEST_CASE("signal at the optimal phase is the largest one") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const cplx s(oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1));
    const cplx b(oracle::uniform(rng, -2, 2), oracle::uniform(rng, -2, 2));
    const double best = signal_delta_m(s, b, 1e-3, 2.0, 0.3);
    const double ph = optimal_homodyne_phase(s, b);
    CHECK(std::abs(signal_at_phase(s, b, 1e-3, 2.0, 0.3, ph)) == Approx(best).epsilon(1e-12));
    for (int k = 0; k < 64; ++k) {
      CHECK(std::abs(signal_at_phase(s, b, 1e-3, 2.0, 0.3, 0.1 * k)) <= best * (1 + 1e-12));
    }
  }
}

TEST_CASE("signal vanishes without perturbation") {
  CHECK(signal_delta_m(cplx(0.4, 0.2), cplx(1, 0), 0.0, 1.0, 0.5) == 0.0);
  CHECK(signal_delta_m(cplx(1, 0), cplx(1, 0), 1e-6, 1.0, 1.0) == Approx(2e-6));
}

TEST_CASE("output noise spectrum") {
  SystemParams p;
  const ScatteringPair bare = scatter(p);
  const auto occ = mode_occupancies(p);
  CHECK(output_noise_spectrum(bare.s0, occ) ==
        Approx(1 + 2 * occupancies(p).n_a2).epsilon(1e-12));

  for (double w : {0.2, 0.5, 0.9391, 1.0, 2.0}) {
    const SystemParams q = at_w(w);
    const double u = uw(q).u;
    const double n = occupancies(q).n_a2;
    const double expect = std::pow((w - 1) / (w + 1), 2) * (1 + 2 * n) +
                          2 * w * (2 + u) / ((w + 1) * (w + 1));
    CHECK(output_noise_spectrum(scatter(q).s0, mode_occupancies(q)) ==
          Approx(expect).epsilon(2e-3));
  }
}

TEST_CASE("measurement variance") {
  CHECK(measurement_variance(1.0, 0.3, 2.0) == Approx(2.0));
  CHECK(measurement_variance(10.0, 0.5, 1.0) == Approx(5.5));
  CHECK(measurement_variance(0.0, 1.0, 1.0) == 0.0);
}

TEST_CASE("SNR scales with tau, |beta|^2 and epsilon^2") {
  SystemParams p = at_w(0.5);
  const double base = snr_matrix(p).snr;
  p.tau = 3.0;
  p.beta = cplx(0, 2);
  p.epsilon = 3e-6;
  CHECK(snr_matrix(p).snr == Approx(base * 3 * 4 * 9).epsilon(1e-10));
  p.beta = cplx(0, 0);
  CHECK(snr_matrix(p).snr == 0.0);
}

TEST_CASE("dominant perturbation reproduces the closed form with X = Y = 0") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    SystemParams p = oracle::random_symmetric(rng, oracle::topology_at(i));
    p.perturbation = PerturbationMode::Dominant;
    p.coop_rf = coop_rf_for_w(p, oracle::log_uniform(rng, 0.05, 3.0));
    const NoiseParams np = noise_params(p);
    const double closed = snr_closed_per_unit(p.efficiency(), p.omega_lc, p.gamma_lc,
                                              occupancies(p).n_a2, np.u, np.w);
    CHECK(snr_per_unit_matrix(p) == Approx(closed).epsilon(1e-9));
  }
}

TEST_CASE("full perturbation reproduces the closed form with X and Y") {
  for (double w : {0.3, 0.9391, 1.5}) {
    const SystemParams p = at_w(w);
    const NoiseParams np = noise_params(p);
    const SmallParams s = small_params(p);
    const double closed = snr_closed_per_unit(p.efficiency(), p.omega_lc, p.gamma_lc,
                                              occupancies(p).n_a2, np.u, np.w, s.X, s.Y);
    CHECK(snr_per_unit_matrix(p) == Approx(closed).epsilon(1e-9));
  }
}

TEST_CASE("variance at perfect matching is tau rho") {
  SystemParams p = at_w(1.0);
  p.tau = 2.5;
  const NoiseParams np = noise_params(p);
  CHECK(snr_matrix(p).sigma2 == Approx(p.tau * np.rho).epsilon(1e-9));
}

TEST_CASE("SNR decreases with the thermal occupancies") {
  double prev = 1e300;
  for (double t : {0.02, 0.05, 0.1, 0.2, 0.5}) {
    SystemParams p = at_w(0.9);
    p.temperature = t;
    p.detection = Detection::efficiency(0.1);
    p.coop_rf = coop_rf_for_w(p, 0.9);
    const double s = snr_per_unit_matrix(p);
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("reference scenario report") {
  const SystemParams p = at_w(w_opt(noise_params(SystemParams{}).xi));
  const SensingReport rep = snr_matrix(p);
  CHECK(rep.r == Approx(4.43).epsilon(0.01));
  CHECK(rep.diag.closed_form_valid);
  CHECK(rep.diag.w == Approx(0.939).epsilon(1e-3));
  CHECK(rep.stability < 0);
  CHECK_FALSE(rep.ill_conditioned);
  CHECK(rep.tau_valid);
  CHECK(std::abs(rep.s22) == Approx(std::abs(rf_reflection_closed(rep.diag.w))).epsilon(1e-2));
  CHECK(rep.snr0 == Approx(rep.snr0_per_unit * 1e-12).epsilon(1e-12));
}
