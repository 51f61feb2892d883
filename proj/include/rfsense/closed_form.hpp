#pragma once

#include <optional>

#include "rfsense/model.hpp"

namespace rfsense {

/// Effective noise figures of the hybrid device.
///   u     : residual mechanical noise after laser cooling
///   w     : impedance-matching parameter (rf reflection (w-1)/(w+1))
///   rho   : 1 + eta u / 2
///   sigma : 1 + 2 eta n_a2
///   xi    : rho / sigma
struct NoiseParams {
  double u = 0.0;
  double w = 0.0;
  double rho = 1.0;
  double sigma = 1.0;
  double xi = 1.0;
};

struct UW {
  double u = 0.0;
  double w = 0.0;
};

UW uw_four(double coop_optical, double coop_rf, double delta, double phi, double gamma_m,
           double n_b1, double n_b2);
UW uw_three(double coop_optical, double coop_rf, double n_b);

/// Dispatches on topology. Four-mode requires gamma_m1 == gamma_m2.
UW uw(const SystemParams& p);

NoiseParams noise_params(double u, double w, double eta, double n_a2);
NoiseParams noise_params(const SystemParams& p);

/// Detuning minimising u at fixed phase. Throws DomainError at phi = pi.
double delta_opt(double coop_optical, double gamma_m, double phi);

/// First-order side effects of the capacitance perturbation besides the
/// omega_LC/2 shift, plus the resulting signal corrections X and Y.
struct SmallParams {
  cplx v{0.25, 0.0};
  cplx gt21{};
  cplx gt22{};
  double omega_lc_shift = 0.0;  // omega~_LC
  double detuning_shift = 0.0;  // Delta~
  double X = 0.0;
  double Y = 0.0;
};

/// All corrections switched off (dominant-only perturbation).
SmallParams zero_small_params();

/// v, g~2j, omega~_LC and Delta~ for any scenario (X = Y = 0 here).
/// Throws DomainError when a bare rf coupling is zero while the matching
/// dressed coupling is not.
SmallParams perturbation_shifts(const SystemParams& p);

/// perturbation_shifts plus X and Y; needs the symmetric closed-form setting.
SmallParams small_params(const SystemParams& p);

/// SNR including the X, Y signal corrections.
double snr_closed(const SystemParams& p, double u, double w, double X, double Y);

/// SNR / (tau |beta|^2 eps^2).
double snr_closed_per_unit(double eta, double omega_lc, double gamma_lc, double n_a2, double u,
                           double w, double X = 0.0, double Y = 0.0);

/// d(w) = (1+w)^2 [w^2 - 2(1 - 2 xi) w + 1]; SNR is proportional to 1/d.
double denominator(double w, double xi);

/// Local minimiser of d(w) for 0 < xi <= 1/9 (no threshold applied).
double local_w_opt(double xi);

/// d at local_w_opt, in the compact radical form.
double denominator_local_min(double xi);

/// Optimal matching parameter: local_w_opt(xi) below the threshold, else 0.
double w_opt(double xi);

/// Threshold on xi below which the hybrid device beats the bare LC circuit
/// (exact radical, ~0.0973).
double xi_bar();

/// Maximum of SNR/SNR_0 over w.
double r_max(double xi);

/// SNR / (tau |beta|^2 eps^2) at w_opt.
double snr_max_per_unit(double eta, double omega_lc, double gamma_lc, double rho, double sigma);
double snr_max(const SystemParams& p, double rho, double sigma);

/// SNR of the bare LC circuit (w = 0).
double snr0_per_unit(double eta, double omega_lc, double gamma_lc, double sigma);

/// SNR at perfect impedance matching (w = 1).
double snr_im_per_unit(double eta, double omega_lc, double gamma_lc, double rho);

/// SNR/SNR_0 with X = Y = 0.
double r_relative(double eta, double n_a2, double u, double w);

/// r at w = 1: sigma / (16 rho).
double r_im(double rho, double sigma);

double detection_efficiency(double zeta, double temperature);

/// Smallest efficiency giving r_max > 1 at fixed u and n_a2:
/// (1 - xi_bar) / (2 xi_bar n_a2 - u/2). Empty when no efficiency suffices.
std::optional<double> eta_threshold(double n_a2, double u);

/// High-temperature slope of u: u ~ u_check * kB T / hbar (delta = phi = 0).
double u_check(Topology t, double coop_optical, double omega_lc, double omega_1,
               double omega_2);

/// Largest detection-noise coefficient zeta (1/K) still giving r_max > 1.
/// Negative means no zeta works at this temperature.
double zeta_threshold(double omega_lc, double u_check_value, double temperature);

/// True when the three-mode setup on the upper mechanical mode has less
/// mechanical noise than the four-mode one (omega_LC < 2/3 omega_2).
bool crossover_3v4(double omega_lc, double omega_2);

/// Gamma2 giving matching parameter w with everything else in p fixed.
double coop_rf_for_w(const SystemParams& p, double w);

}  // namespace rfsense
