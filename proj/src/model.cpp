#include "rfsense/model.hpp"

#include <cmath>
#include <string>

#include "rfsense/errors.hpp"

namespace rfsense {

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::FourMode:
      return "four_mode";
    case Topology::ThreeModeHigh:
      return "three_mode_high";
    case Topology::ThreeModeLow:
      return "three_mode_low";
  }
  return "four_mode";
}

Topology topology_from_string(std::string_view s) {
  if (s == "four_mode") return Topology::FourMode;
  if (s == "three_mode_high") return Topology::ThreeModeHigh;
  if (s == "three_mode_low") return Topology::ThreeModeLow;
  throw ConfigurationError("unknown topology '" + std::string(s) +
                           "' (expected four_mode, three_mode_high, three_mode_low)");
}

int mode_count(Topology t) { return t == Topology::FourMode ? 4 : 3; }

std::string_view to_string(PerturbationMode m) {
  return m == PerturbationMode::Dominant ? "dominant" : "full";
}

PerturbationMode perturbation_mode_from_string(std::string_view s) {
  if (s == "dominant") return PerturbationMode::Dominant;
  if (s == "full") return PerturbationMode::Full;
  throw ConfigurationError("unknown perturbation_mode '" + std::string(s) +
                           "' (expected dominant or full)");
}

double Detection::eta(double temperature) const {
  if (kind == Kind::Efficiency) return value;
  return 1.0 / (1.0 + value * temperature);
}

double SystemParams::participating_gamma_m() const {
  return topology == Topology::ThreeModeLow ? gamma_m1 : gamma_m2;
}

double SystemParams::participating_omega() const {
  return topology == Topology::ThreeModeLow ? omega_1 : omega_2;
}

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be strictly positive and finite");
  }
}

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be non-negative and finite");
  }
}

}  // namespace

void SystemParams::validate() const {
  require_positive(omega_lc, "omega_lc");
  require_positive(gamma_lc, "gamma_lc");
  require_positive(omega_1, "omega_1");
  require_positive(omega_2, "omega_2");
  require_positive(gamma_m1, "gamma_m1");
  require_positive(gamma_m2, "gamma_m2");
  require_positive(kappa, "kappa");
  require_positive(temperature, "temperature");
  require_positive(tau, "tau");
  require_non_negative(coop_optical, "gamma1");
  require_non_negative(coop_rf, "gamma2");
  require_non_negative(epsilon, "epsilon");
  if (!std::isfinite(delta) || !std::isfinite(phi)) {
    throw DomainError("delta and phi must be finite");
  }
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw DomainError("beta must be finite");
  }
  if (detection.kind == Detection::Kind::Efficiency) {
    if (!(detection.value > 0.0 && detection.value <= 1.0)) {
      throw DomainError("eta must lie in (0, 1]");
    }
  } else {
    require_non_negative(detection.value, "zeta");
  }
  // Throws for inconsistent frequency layouts.
  const Resonance res = resonance_frequencies(*this);
  if (topology == Topology::FourMode &&
      std::abs(res.omega_lc - omega_lc) > 1e-9 * omega_lc) {
    throw ConfigurationError("four_mode requires omega_lc = (omega_1 + omega_2)/2");
  }
}

double thermal_occupancy(double omega, double temperature) {
  if (!(omega > 0.0)) throw DomainError("thermal_occupancy: omega must be > 0");
  if (!(temperature > 0.0)) throw DomainError("thermal_occupancy: temperature must be > 0");
  const double x = constants::hbar * omega / (constants::k_boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

ThermalOccupancies occupancies(const SystemParams& p) {
  ThermalOccupancies n;
  n.n_a2 = thermal_occupancy(p.omega_lc, p.temperature);
  n.n_b1 = thermal_occupancy(p.omega_1, p.temperature);
  n.n_b2 = thermal_occupancy(p.omega_2, p.temperature);
  return n;
}

std::vector<double> mode_occupancies(const SystemParams& p) {
  const ThermalOccupancies n = occupancies(p);
  switch (p.topology) {
    case Topology::FourMode:
      return {n.n_a1, n.n_a2, n.n_b1, n.n_b2};
    case Topology::ThreeModeHigh:
      return {n.n_a1, n.n_a2, n.n_b2};
    case Topology::ThreeModeLow:
      return {n.n_a1, n.n_a2, n.n_b1};
  }
  return {};
}

namespace {

Couplings make_couplings(double coop_optical, double coop_rf, double kappa, double gamma_lc,
                         double gamma_m1, double gamma_m2, double phi, Topology topology) {
  if (coop_optical < 0.0 || coop_rf < 0.0) {
    throw DomainError("cooperativities must be non-negative");
  }
  const double g1_1 = std::sqrt(coop_optical * kappa * gamma_m1 / 2.0);
  const double g1_2 = std::sqrt(coop_optical * kappa * gamma_m2 / 2.0);
  const double g2_1 = std::sqrt(coop_rf * gamma_lc * gamma_m1 / 4.0);
  const double g2_2 = std::sqrt(coop_rf * gamma_lc * gamma_m2 / 4.0);
  const cplx loop = std::polar(1.0, phi);

  Couplings g;
  switch (topology) {
    case Topology::FourMode:
      g.g11 = g1_1 * loop;
      g.g12 = g1_2;
      g.g21 = g2_1;
      g.g22 = g2_2;
      break;
    case Topology::ThreeModeLow:
      g.g11 = g1_1 * loop;
      g.g21 = g2_1;
      break;
    case Topology::ThreeModeHigh:
      g.g12 = g1_2 * loop;
      g.g22 = g2_2;
      break;
  }
  return g;
}

}  // namespace

Couplings cooperativities_to_couplings(double coop_optical, double coop_rf, double kappa,
                                       double gamma_lc, double gamma_m, double phi,
                                       Topology topology) {
  return make_couplings(coop_optical, coop_rf, kappa, gamma_lc, gamma_m, gamma_m, phi, topology);
}

Couplings couplings_for(const SystemParams& p) {
  return make_couplings(p.coop_optical, p.coop_rf, p.kappa, p.gamma_lc, p.gamma_m1, p.gamma_m2,
                        p.phi, p.topology);
}

std::pair<double, double> couplings_to_cooperativities(const Couplings& g, double kappa,
                                                       double gamma_lc, double gamma_m,
                                                       Topology topology) {
  if (!(kappa > 0.0 && gamma_lc > 0.0 && gamma_m > 0.0)) {
    throw DomainError("couplings_to_cooperativities: rates must be > 0");
  }
  double g1 = 0.0;
  double g2 = 0.0;
  auto same = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); };
  switch (topology) {
    case Topology::FourMode:
      if (!same(std::abs(g.g11), std::abs(g.g12)) || !same(std::abs(g.g21), std::abs(g.g22))) {
        throw PreconditionError("closed forms need |g11| = |g12| and |g21| = |g22|");
      }
      g1 = std::abs(g.g11);
      g2 = std::abs(g.g21);
      break;
    case Topology::ThreeModeLow:
      g1 = std::abs(g.g11);
      g2 = std::abs(g.g21);
      break;
    case Topology::ThreeModeHigh:
      g1 = std::abs(g.g12);
      g2 = std::abs(g.g22);
      break;
  }
  return {2.0 * g1 * g1 / (kappa * gamma_m), 4.0 * g2 * g2 / (gamma_lc * gamma_m)};
}

Resonance resonance_frequencies(Topology t, double omega_1, double omega_2, double delta,
                                double omega_lc) {
  Resonance r;
  switch (t) {
    case Topology::FourMode:
      if (omega_1 > omega_2) {
        throw ConfigurationError("four_mode requires omega_1 < omega_2");
      }
      r.omega_lc = 0.5 * (omega_1 + omega_2);
      r.omega_x = 0.5 * (omega_2 - omega_1) - delta;
      r.degenerate = omega_1 == omega_2;
      break;
    case Topology::ThreeModeLow:
      r.omega_lc = omega_lc;
      r.omega_x = omega_lc - omega_1;
      break;
    case Topology::ThreeModeHigh:
      r.omega_lc = omega_lc;
      r.omega_x = omega_2 - omega_lc;
      break;
  }
  if (t != Topology::FourMode && !(r.omega_x > 0.0)) {
    throw ConfigurationError(std::string(to_string(t)) +
                             " needs a positive rf drive frequency omega_x");
  }
  return r;
}

Resonance resonance_frequencies(const SystemParams& p) {
  return resonance_frequencies(p.topology, p.omega_1, p.omega_2, p.delta, p.omega_lc);
}

}  // namespace rfsense
