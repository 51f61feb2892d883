#include "rfsense/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rfsense/closed_form.hpp"
#include "rfsense/errors.hpp"

namespace rfsense {

double optimal_homodyne_phase(cplx s1_22, cplx beta) {
  if (s1_22 == cplx{}) {
    throw SignalNullError("perturbation produces no first-order signal at the rf port");
  }
  // {M^-1 V M^-1}_22 = -S1_22 / gamma_LC and gamma_LC > 0, so only the sign flips.
  double phase = constants::pi - std::arg(-beta * s1_22);
  phase = std::remainder(phase, 2.0 * constants::pi);
  if (phase <= -constants::pi) phase += 2.0 * constants::pi;
  return phase;
}

double signal_delta_m(cplx s1_22, cplx beta, double epsilon, double tau, double eta) {
  return 2.0 * epsilon * tau * std::sqrt(eta) * std::abs(beta) * std::abs(s1_22);
}

double signal_at_phase(cplx s1_22, cplx beta, double epsilon, double tau, double eta,
                       double phase) {
  return 2.0 * tau * std::sqrt(eta) * (beta * std::polar(1.0, phase) * epsilon * s1_22).real();
}

double output_noise_spectrum(const CMatrix& s0, std::span<const double> occupancies) {
  double sx = 0.0;
  for (Eigen::Index j = 0; j < s0.cols(); ++j) {
    sx += std::norm(s0(kRfPort, j)) * (1.0 + 2.0 * occupancies[static_cast<std::size_t>(j)]);
  }
  return sx;
}

double measurement_variance(double sx_out, double eta, double tau) {
  return tau * (eta * sx_out + (1.0 - eta));
}

namespace {

struct PortResponse {
  ScatteringPair pair;
  double sx = 0.0;
  double per_unit = 0.0;
  double stability = 0.0;
};

PortResponse evaluate(const SystemParams& p) {
  PortResponse out;
  const DriftMatrix m = build_drift(p);
  out.stability = stability_check(m);
  out.pair = scatter(m, build_perturbation(p), build_coupling(p));
  const std::vector<double> occ = mode_occupancies(p);
  out.sx = output_noise_spectrum(out.pair.s0, occ);
  const double eta = p.efficiency();
  out.per_unit = 4.0 * eta * std::norm(out.pair.s1(kRfPort, kRfPort)) /
                 measurement_variance(out.sx, eta, 1.0);
  return out;
}

}  // namespace

double snr_per_unit_matrix(const SystemParams& p) { return evaluate(p).per_unit; }

SensingReport snr_matrix(const SystemParams& p) {
  p.validate();
  const double eta = p.efficiency();
  const PortResponse hybrid = evaluate(p);

  SystemParams bare = p;
  bare.coop_rf = 0.0;
  const PortResponse lc = evaluate(bare);

  SensingReport rep;
  const cplx s1_22 = hybrid.pair.s1(kRfPort, kRfPort);
  rep.delta_m = signal_delta_m(s1_22, p.beta, p.epsilon, p.tau, eta);
  rep.sx_out = hybrid.sx;
  rep.sigma2 = measurement_variance(hybrid.sx, eta, p.tau);
  rep.snr = rep.delta_m * rep.delta_m / rep.sigma2;
  rep.snr_per_unit = hybrid.per_unit;
  rep.snr0_per_unit = lc.per_unit;
  rep.snr0 = lc.per_unit * p.tau * std::norm(p.beta) * p.epsilon * p.epsilon;
  rep.r = hybrid.per_unit / lc.per_unit;
  rep.s22 = hybrid.pair.s0(kRfPort, kRfPort);
  rep.stability = hybrid.stability;
  rep.condition = hybrid.pair.condition;
  rep.ill_conditioned = hybrid.pair.ill_conditioned;
  rep.correlation_time =
      std::max({1.0 / p.gamma_lc, 1.0 / p.gamma_m1, 1.0 / p.gamma_m2, 1.0 / p.kappa});
  rep.tau_valid = p.tau > 10.0 * rep.correlation_time;

  if (std::abs(p.beta) > 0.0) {
    rep.diag.homodyne_phase = optimal_homodyne_phase(s1_22, p.beta);
  }
  try {
    const NoiseParams np = noise_params(p);
    rep.diag.closed_form_valid = true;
    rep.diag.u = np.u;
    rep.diag.w = np.w;
    rep.diag.xi = np.xi;
    rep.diag.rho = np.rho;
    rep.diag.sigma = np.sigma;
    rep.diag.w_opt = w_opt(np.xi);
  } catch (const PreconditionError&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.diag.u = rep.diag.w = rep.diag.xi = rep.diag.rho = rep.diag.sigma = rep.diag.w_opt = nan;
  }
  return rep;
}

}  // namespace rfsense
