#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <utility>
#include <vector>

namespace rfsense {

using cplx = std::complex<double>;

namespace constants {
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

/// Which mechanical modes mediate the optical <-> rf interaction.
///   FourMode      : both b1 (omega_1 < omega_LC) and b2 (omega_2 > omega_LC)
///   ThreeModeHigh : b2 only
///   ThreeModeLow  : b1 only
enum class Topology { FourMode, ThreeModeHigh, ThreeModeLow };

std::string_view to_string(Topology t);
Topology topology_from_string(std::string_view s);

/// 3 or 4. Mode ordering is always (a1, a2, b...) with b1 before b2.
int mode_count(Topology t);

enum class PerturbationMode {
  Dominant,  // only the omega_LC/2 frequency shift
  Full,      // plus the small shifts and coupling corrections
};

std::string_view to_string(PerturbationMode m);
PerturbationMode perturbation_mode_from_string(std::string_view s);

/// Homodyne detection is characterised either by the efficiency eta
/// directly, or by the noise coefficient zeta (1/K) with eta = 1/(1 + zeta T).
struct Detection {
  enum class Kind { Efficiency, NoiseCoefficient };
  Kind kind = Kind::NoiseCoefficient;
  double value = 100.0;

  static Detection efficiency(double eta) { return {Kind::Efficiency, eta}; }
  static Detection noise_coefficient(double zeta) { return {Kind::NoiseCoefficient, zeta}; }

  double eta(double temperature) const;
};

/// Bare single-quantum couplings g0,1j (optical) and g0,2j (rf), rad/s.
/// Only their ratios enter the small first-order corrections.
struct BareCouplings {
  std::array<double, 2> optical{2.0 * constants::pi * 10.0, 2.0 * constants::pi * 10.0};
  std::array<double, 2> rf{2.0 * constants::pi * 10.0, 2.0 * constants::pi * 10.0};
};

/// One sensing scenario. All frequencies and rates are angular (rad/s).
/// Defaults reproduce the reference parameter set (T = 0.1 K, Gamma1 = 60,
/// zeta = 100 1/K); coop_rf defaults to the bare LC circuit.
struct SystemParams {
  Topology topology = Topology::FourMode;
  double omega_lc = 5e6;
  double gamma_lc = 6e3;
  double omega_1 = 2e6;
  double omega_2 = 8e6;
  double gamma_m1 = 500.0;
  double gamma_m2 = 500.0;
  double kappa = 1e5;
  double delta = 0.0;
  double phi = 0.0;
  double temperature = 0.1;
  double coop_optical = 60.0;  // Gamma1
  double coop_rf = 0.0;        // Gamma2
  Detection detection{};
  double epsilon = 1e-6;
  cplx beta{1.0, 0.0};
  double tau = 1.0;
  BareCouplings bare{};
  PerturbationMode perturbation = PerturbationMode::Full;

  double efficiency() const { return detection.eta(temperature); }

  /// Detuning actually used: three-mode topologies are always resonant.
  double effective_delta() const { return topology == Topology::FourMode ? delta : 0.0; }

  /// Damping of the single mechanical mode in three-mode topologies.
  double participating_gamma_m() const;
  double participating_omega() const;

  /// Throws ConfigurationError / DomainError on invalid values.
  void validate() const;
};

struct ThermalOccupancies {
  double n_a1 = 0.0;  // optical: vacuum at any realistic temperature
  double n_a2 = 0.0;
  double n_b1 = 0.0;
  double n_b2 = 0.0;
};

/// Bose-Einstein occupation 1/(exp(hbar omega / kB T) - 1).
/// Returns 0 in the T -> 0 limit (underflow), throws DomainError for omega <= 0 or T <= 0.
double thermal_occupancy(double omega, double temperature);

ThermalOccupancies occupancies(const SystemParams& p);

/// Occupancies ordered like the modes of the drift matrix for p.topology.
std::vector<double> mode_occupancies(const SystemParams& p);

/// Linearised beam-splitter couplings. Inactive entries are zero.
struct Couplings {
  cplx g11{}, g12{}, g21{}, g22{};
};

/// |g1j| = sqrt(Gamma1 kappa gamma_m / 2), |g2j| = sqrt(Gamma2 gamma_LC gamma_m / 4).
/// The loop phase phi sits entirely on g11; every other coupling is real positive.
Couplings cooperativities_to_couplings(double coop_optical, double coop_rf, double kappa,
                                       double gamma_lc, double gamma_m, double phi,
                                       Topology topology);

/// Same, but with the mode-specific damping gamma_mj for each mechanical mode.
Couplings couplings_for(const SystemParams& p);

/// Inverse map. Throws PreconditionError when the two optical (or two rf)
/// coupling magnitudes of a four-mode set differ by more than 1e-9 relative.
std::pair<double, double> couplings_to_cooperativities(const Couplings& g, double kappa,
                                                       double gamma_lc, double gamma_m,
                                                       Topology topology);

struct Resonance {
  double omega_lc = 0.0;
  double omega_x = 0.0;   // rf drive frequency
  bool degenerate = false;  // four-mode with omega_1 == omega_2
};

/// Red-sideband bookkeeping. For FourMode omega_lc is derived as the midpoint of
/// the mechanical frequencies; three-mode topologies take omega_lc as given and
/// ignore delta.
Resonance resonance_frequencies(Topology t, double omega_1, double omega_2, double delta,
                                double omega_lc);

Resonance resonance_frequencies(const SystemParams& p);

}  // namespace rfsense
