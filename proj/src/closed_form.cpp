#include "rfsense/closed_form.hpp"

#include <cmath>
#include <string>

#include "rfsense/errors.hpp"

namespace rfsense {

namespace {

bool equal_dampings(const SystemParams& p) {
  return std::abs(p.gamma_m1 - p.gamma_m2) <= 1e-12 * std::max(p.gamma_m1, p.gamma_m2);
}

double sq(double x) { return x * x; }

}  // namespace

UW uw_four(double coop_optical, double coop_rf, double delta, double phi, double gamma_m,
           double n_b1, double n_b2) {
  if (coop_optical < 0.0 || coop_rf < 0.0) throw DomainError("uw_four: negative cooperativity");
  const double loop = 1.0 + coop_optical * (1.0 - std::cos(phi));
  const double eff = coop_optical + 0.5 + 2.0 * sq(delta / gamma_m);
  const double mismatch = coop_optical * std::sin(phi) - 2.0 * delta / gamma_m;
  UW r;
  r.u = (n_b1 + n_b2) / eff * (loop + sq(mismatch) / loop);
  r.w = coop_rf * loop / eff;
  return r;
}

UW uw_three(double coop_optical, double coop_rf, double n_b) {
  if (coop_optical < 0.0 || coop_rf < 0.0) throw DomainError("uw_three: negative cooperativity");
  return {4.0 * n_b / (coop_optical + 1.0), coop_rf / (coop_optical + 1.0)};
}

UW uw(const SystemParams& p) {
  const ThermalOccupancies n = occupancies(p);
  switch (p.topology) {
    case Topology::FourMode:
      if (!equal_dampings(p)) {
        throw PreconditionError("closed forms assume equal mechanical dampings");
      }
      return uw_four(p.coop_optical, p.coop_rf, p.delta, p.phi, p.gamma_m1, n.n_b1, n.n_b2);
    case Topology::ThreeModeHigh:
      return uw_three(p.coop_optical, p.coop_rf, n.n_b2);
    case Topology::ThreeModeLow:
      return uw_three(p.coop_optical, p.coop_rf, n.n_b1);
  }
  return {};
}

NoiseParams noise_params(double u, double w, double eta, double n_a2) {
  NoiseParams np;
  np.u = u;
  np.w = w;
  np.rho = 1.0 + eta * u / 2.0;
  np.sigma = 1.0 + 2.0 * eta * n_a2;
  np.xi = np.rho / np.sigma;
  return np;
}

NoiseParams noise_params(const SystemParams& p) {
  const UW x = uw(p);
  return noise_params(x.u, x.w, p.efficiency(), occupancies(p).n_a2);
}

double delta_opt(double coop_optical, double gamma_m, double phi) {
  const double c = 1.0 + std::cos(phi);
  if (std::abs(c) <= 1e-14) {
    throw DomainError("delta_opt: optimum undefined at phi = pi");
  }
  return gamma_m * (0.5 + coop_optical) * std::sin(phi) / c;
}

SmallParams zero_small_params() { return SmallParams{}; }

SmallParams perturbation_shifts(const SystemParams& p) {
  const Resonance res = resonance_frequencies(p);
  const Couplings g = couplings_for(p);

  SmallParams s;
  // The static shift of omega_LC is second order in the bare couplings, so
  // the bare frequency is taken equal to the dressed one.
  const double omega_bare = p.omega_lc;
  const cplx z{p.gamma_lc / 2.0, res.omega_x};
  s.v = 0.25 - z * z / (omega_bare * omega_bare + z * z);
  s.gt21 = g.g21 * s.v;
  s.gt22 = g.g22 * std::conj(s.v);

  const double scale = 0.5 + 2.0 * s.v.real();
  const std::array<cplx, 2> g2{g.g21, g.g22};
  const std::array<double, 2> omega{p.omega_1, p.omega_2};
  const std::array<double, 2> gamma{p.gamma_m1, p.gamma_m2};
  double lc_sum = 0.0;
  double opt_sum = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    const double g2_abs2 = std::norm(g2[j]);
    if (g2_abs2 == 0.0) continue;
    if (p.bare.rf[j] == 0.0) {
      throw DomainError("bare rf coupling g0,2" + std::to_string(j + 1) +
                        " must be nonzero when Gamma2 > 0");
    }
    // Static mechanical amplitude with the optical bare coupling switched off.
    const cplx beta_dc =
        cplx(0.0, g2_abs2) / (2.0 * p.bare.rf[j] * cplx(gamma[j] / 2.0, omega[j]));
    lc_sum += p.bare.rf[j] * beta_dc.real();
    opt_sum += p.bare.optical[j] * beta_dc.real();
  }
  s.omega_lc_shift = 4.0 * scale * lc_sum;
  s.detuning_shift = 2.0 * scale * opt_sum;
  return s;
}

SmallParams small_params(const SystemParams& p) {
  SmallParams s = perturbation_shifts(p);
  const UW x = uw(p);
  const double w = x.w;
  const double g1 = p.coop_optical;
  const double ratio_lc = p.gamma_lc / p.omega_lc;
  if (p.topology == Topology::FourMode) {
    const double loop = 1.0 + g1 * (1.0 - std::cos(p.phi));
    const double eff = g1 + 0.5 + 2.0 * sq(p.delta / p.gamma_m1);
    const double w_over_g2 = loop / eff;  // w / Gamma2 without the 0/0 at Gamma2 = 0
    s.X = 2.0 * s.omega_lc_shift / p.omega_lc -
          w * g1 * p.gamma_lc * s.detuning_shift / (p.kappa * p.omega_lc) *
              (w_over_g2 + std::cos(p.phi) - 1.0) / loop;
    s.Y = 2.0 * w * ratio_lc * (s.v.real() + s.v.imag() * g1 * std::sin(p.phi) / loop);
  } else {
    const double w_over_g2 = 1.0 / (g1 + 1.0);
    s.X = 2.0 * s.omega_lc_shift / p.omega_lc -
          w * w_over_g2 * g1 * p.gamma_lc * s.detuning_shift / (p.kappa * p.omega_lc);
    s.Y = 2.0 * w * ratio_lc * s.v.real();
  }
  return s;
}

double snr_closed_per_unit(double eta, double omega_lc, double gamma_lc, double n_a2, double u,
                           double w, double X, double Y) {
  const double num = 16.0 * eta * sq(omega_lc / gamma_lc) * (sq(1.0 + X) + sq(Y));
  const double den =
      sq(1.0 + w) * (sq(1.0 + w) + 2.0 * eta * (sq(1.0 - w) * n_a2 + u * w));
  return num / den;
}

double snr_closed(const SystemParams& p, double u, double w, double X, double Y) {
  const double unit = std::norm(p.beta) * sq(p.epsilon) * p.tau;
  return unit * snr_closed_per_unit(p.efficiency(), p.omega_lc, p.gamma_lc, occupancies(p).n_a2,
                                    u, w, X, Y);
}

double denominator(double w, double xi) {
  return sq(1.0 + w) * (w * w - 2.0 * (1.0 - 2.0 * xi) * w + 1.0);
}

double local_w_opt(double xi) {
  if (!(xi > 0.0) || xi > 1.0 / 9.0) {
    throw DomainError("local_w_opt: requires 0 < xi <= 1/9");
  }
  // Clamp the rounding residue of (1/9 - xi) at the upper end.
  const double tail = std::max(0.0, 1.0 / 9.0 - xi);
  return 1.5 * (1.0 / 3.0 - xi + std::sqrt((1.0 - xi) * tail));
}

double denominator_local_min(double xi) {
  if (!(xi > 0.0) || xi > 1.0 / 9.0) {
    throw DomainError("denominator_local_min: requires 0 < xi <= 1/9");
  }
  const double tail = 1.0 / 9.0 - xi;
  if (tail <= 0.0) return denominator(1.0 / 3.0, xi);
  const double b = 2.25 * tail * (1.0 + std::sqrt((1.0 - xi) / tail));
  return 4.0 / 3.0 * sq(1.0 - xi) * (1.0 - b * b);
}

double w_opt(double xi) {
  if (!(xi > 0.0)) throw DomainError("w_opt: xi must be > 0");
  return xi <= xi_bar() ? local_w_opt(xi) : 0.0;
}

double xi_bar() {
  const double a = 23.0 * 277.0;
  const double b = std::pow(8.0 * 3.0 * 13.0, 1.5);
  return (37.0 - std::cbrt(a - b) - std::cbrt(a + b)) / 48.0;
}

double r_max(double xi) {
  if (!(xi > 0.0)) throw DomainError("r_max: xi must be > 0");
  if (xi >= xi_bar()) return 1.0;
  const double tail = 1.0 / 9.0 - xi;
  const double b = 2.25 * tail * (1.0 + std::sqrt((1.0 - xi) / tail));
  return 3.0 / (4.0 * sq(1.0 - xi) * (1.0 - b * b));
}

double snr0_per_unit(double eta, double omega_lc, double gamma_lc, double sigma) {
  return 16.0 * eta * sq(omega_lc / gamma_lc) / sigma;
}

double snr_im_per_unit(double eta, double omega_lc, double gamma_lc, double rho) {
  return eta * sq(omega_lc / gamma_lc) / rho;
}

double snr_max_per_unit(double eta, double omega_lc, double gamma_lc, double rho, double sigma) {
  const double xi = rho / sigma;
  if (xi >= xi_bar()) return snr0_per_unit(eta, omega_lc, gamma_lc, sigma);
  const double tail = 1.0 / 9.0 - xi;
  const double b = 2.25 * tail * (1.0 + std::sqrt((1.0 - xi) / tail));
  return 12.0 * eta * sq(omega_lc / gamma_lc) / (sigma * sq(1.0 - xi) * (1.0 - b * b));
}

double snr_max(const SystemParams& p, double rho, double sigma) {
  return std::norm(p.beta) * sq(p.epsilon) * p.tau *
         snr_max_per_unit(p.efficiency(), p.omega_lc, p.gamma_lc, rho, sigma);
}

double r_relative(double eta, double n_a2, double u, double w) {
  const double sigma = 1.0 + 2.0 * eta * n_a2;
  return sigma / (sq(1.0 + w) * (sq(1.0 + w) + 2.0 * eta * (sq(1.0 - w) * n_a2 + u * w)));
}

double r_im(double rho, double sigma) { return sigma / (16.0 * rho); }

double detection_efficiency(double zeta, double temperature) {
  if (zeta < 0.0) throw DomainError("detection_efficiency: zeta must be >= 0");
  if (!(temperature > 0.0)) throw DomainError("detection_efficiency: temperature must be > 0");
  return 1.0 / (1.0 + zeta * temperature);
}

std::optional<double> eta_threshold(double n_a2, double u) {
  const double xb = xi_bar();
  const double den = 2.0 * xb * n_a2 - u / 2.0;
  if (!(den > 0.0)) return std::nullopt;
  return (1.0 - xb) / den;
}

double u_check(Topology t, double coop_optical, double omega_lc, double omega_1,
               double omega_2) {
  switch (t) {
    case Topology::FourMode:
      return 2.0 * omega_lc / ((coop_optical + 0.5) * omega_1 * omega_2);
    case Topology::ThreeModeHigh:
      return 4.0 / ((coop_optical + 1.0) * omega_2);
    case Topology::ThreeModeLow:
      return 4.0 / ((coop_optical + 1.0) * omega_1);
  }
  return 0.0;
}

double zeta_threshold(double omega_lc, double u_check_value, double temperature) {
  const double xb = xi_bar();
  return 2.0 * constants::k_boltzmann / (constants::hbar * omega_lc) * xb / (1.0 - xb) *
             (1.0 - omega_lc * u_check_value / (4.0 * xb)) -
         1.0 / temperature;
}

bool crossover_3v4(double omega_lc, double omega_2) { return omega_lc < 2.0 / 3.0 * omega_2; }

double coop_rf_for_w(const SystemParams& p, double w) {
  if (w < 0.0) throw DomainError("coop_rf_for_w: w must be >= 0");
  if (p.topology == Topology::FourMode) {
    const double loop = 1.0 + p.coop_optical * (1.0 - std::cos(p.phi));
    const double eff = p.coop_optical + 0.5 + 2.0 * sq(p.delta / p.gamma_m1);
    return w * eff / loop;
  }
  return w * (p.coop_optical + 1.0);
}

}  // namespace rfsense
