#pragma once

#include <span>

#include "rfsense/model.hpp"
#include "rfsense/scattering.hpp"

namespace rfsense {

struct Diagnostics {
  bool closed_form_valid = false;  // false when the symmetric assumptions fail
  double u = 0.0;
  double w = 0.0;
  double xi = 0.0;
  double rho = 0.0;
  double sigma = 0.0;
  double w_opt = 0.0;
  double homodyne_phase = 0.0;  // rad
};

/// Result of the matrix-route evaluation of one scenario.
struct SensingReport {
  double delta_m = 0.0;
  double sigma2 = 0.0;  // s
  double snr = 0.0;
  double snr0 = 0.0;  // same scenario with Gamma2 = 0
  double r = 0.0;     // snr / snr0
  double snr_per_unit = 0.0;   // snr / (tau |beta|^2 eps^2)
  double snr0_per_unit = 0.0;
  double sx_out = 0.0;         // rf output quadrature spectrum at zero frequency
  cplx s22{};                  // rf reflection S0(2,2)
  double stability = 0.0;      // max Re(lambda) of M
  double condition = 1.0;
  bool ill_conditioned = false;
  // The stationary spectra need tau >> 1/gamma_LC, 1/gamma_m; recorded, not enforced.
  double correlation_time = 0.0;
  bool tau_valid = false;
  Diagnostics diag;
};

/// Homodyne phase maximising the signal, pi - arg(beta {M^-1 V M^-1}_22),
/// wrapped to (-pi, pi]. Throws SignalNullError when S1(2,2) = 0.
double optimal_homodyne_phase(cplx s1_22, cplx beta);

/// Signal at the optimal phase, 2 eps tau sqrt(eta) |beta| |S1(2,2)|.
double signal_delta_m(cplx s1_22, cplx beta, double epsilon, double tau, double eta);

/// Signal at an arbitrary homodyne phase (diagnostics only).
double signal_at_phase(cplx s1_22, cplx beta, double epsilon, double tau, double eta,
                       double phase);

/// S_X(0) = sum_j |S0(2,j)|^2 (1 + 2 n_j) over the active modes.
double output_noise_spectrum(const CMatrix& s0, std::span<const double> occupancies);

/// Sigma^2 = tau [eta S_X(0) + (1 - eta)].
double measurement_variance(double sx_out, double eta, double tau);

SensingReport snr_matrix(const SystemParams& p);

/// SNR / (tau |beta|^2 eps^2) from the matrix route only (no report, no
/// reference evaluation). Throws UnstableModelError like the full pipeline.
double snr_per_unit_matrix(const SystemParams& p);

}  // namespace rfsense
