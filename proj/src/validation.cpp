#include "rfsense/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "rfsense/closed_form.hpp"
#include "rfsense/errors.hpp"
#include "rfsense/measurement.hpp"
#include "rfsense/optimizer.hpp"

namespace rfsense {

namespace {

using Check = std::function<CheckResult(const ValidationOptions&)>;

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random scenario satisfying the closed-form symmetry assumptions.
SystemParams random_symmetric(std::mt19937_64& rng) {
  SystemParams p;
  const int t = static_cast<int>(rng() % 3);
  p.topology = t == 0 ? Topology::FourMode : (t == 1 ? Topology::ThreeModeHigh : Topology::ThreeModeLow);
  p.omega_1 = log_uniform(rng, 1e6, 3e6);
  p.omega_2 = p.omega_1 * uniform(rng, 1.5, 4.0);
  p.omega_lc = 0.5 * (p.omega_1 + p.omega_2);
  p.gamma_lc = log_uniform(rng, 1e3, 1e4);
  p.gamma_m1 = p.gamma_m2 = log_uniform(rng, 100.0, 2000.0);
  p.kappa = log_uniform(rng, 5e4, 5e5);
  p.delta = uniform(rng, -3.0, 3.0) * p.gamma_m1;
  p.phi = uniform(rng, -constants::pi, constants::pi);
  p.temperature = log_uniform(rng, 0.01, 1.0);
  p.coop_optical = log_uniform(rng, 0.5, 200.0);
  p.coop_rf = log_uniform(rng, 0.1, 500.0);
  p.detection = Detection::efficiency(log_uniform(rng, 0.01, 1.0));
  return p;
}

SystemParams nonreciprocal_point(double gamma) {
  SystemParams p;
  p.coop_optical = p.coop_rf = gamma;
  const double gm = p.gamma_m1;
  p.delta = 0.5 * gm * std::sqrt(2.0 * gamma - 1.0);
  p.phi = std::arg(-cplx{gm, -2.0 * p.delta} / cplx{gm, 2.0 * p.delta});
  return p;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult occupancies_check(const ValidationOptions&) {
  const SystemParams p;
  const ThermalOccupancies n = occupancies(p);
  const bool ok = std::abs(n.n_a2 - 2618) <= 1 && std::abs(n.n_b1 - 6545) <= 1 &&
                  std::abs(n.n_b2 - 1636) <= 1;
  return {"occupancies", ok,
          "n = (" + fmt(n.n_a2) + ", " + fmt(n.n_b1) + ", " + fmt(n.n_b2) + "), expected (2618, 6545, 1636) +- 1"};
}

CheckResult s22_check(const ValidationOptions& opt) {
  std::mt19937_64 rng(20240611);
  double worst = 0.0;
  int failures = 0;
  std::string first_error;
  for (int i = 0; i < 1000; ++i) {
    const SystemParams p = random_symmetric(rng);
    try {
      const CMatrix s0 = scattering_zeroth(opt.drift(p), build_coupling(p));
      const double err = std::abs(s0(kRfPort, kRfPort) - rf_reflection_closed(uw(p).w));
      worst = std::max(worst, err);
      if (!(err < 1e-9)) ++failures;
    } catch (const std::exception& e) {
      ++failures;
      if (first_error.empty()) first_error = e.what();
    }
  }
  // Exactly matched configurations.
  double matched = 0.0;
  for (Topology t : {Topology::FourMode, Topology::ThreeModeHigh, Topology::ThreeModeLow}) {
    SystemParams p;
    p.topology = t;
    p.coop_rf = coop_rf_for_w(p, 1.0);
    try {
      const CMatrix s0 = scattering_zeroth(opt.drift(p), build_coupling(p));
      matched = std::max(matched, std::abs(s0(kRfPort, kRfPort)));
    } catch (const std::exception& e) {
      matched = std::numeric_limits<double>::infinity();
      if (first_error.empty()) first_error = e.what();
    }
  }
  const bool ok = failures == 0 && matched < 1e-9;
  std::string detail = "max |S22 - (w-1)/(w+1)| = " + fmt(worst) + " over 1000 draws (" +
                       std::to_string(failures) + " failures); max |S22| at w = 1: " + fmt(matched);
  if (!first_error.empty()) detail += "; " + first_error;
  return {"s22_closed_form", ok, detail};
}

CheckResult nonreciprocity_check(const ValidationOptions& opt) {
  bool ok = true;
  std::string detail;
  for (double gamma : {1.0, 10.0, 60.0}) {
    const SystemParams p = nonreciprocal_point(gamma);
    try {
      const CMatrix s0 = scattering_zeroth(opt.drift(p), build_coupling(p));
      const double s12 = std::abs(s0(kOpticalPort, kRfPort));
      const double s21 = std::abs(s0(kRfPort, kOpticalPort));
      const double w = uw(p).w;
      ok = ok && s12 < 1e-10 && s21 > 0.0 && std::abs(w - 1.0) < 1e-12;
      detail += "Gamma=" + fmt(gamma) + ": |S12|=" + fmt(s12) + " |S21|=" + fmt(s21) +
                " w-1=" + fmt(w - 1.0) + "; ";
    } catch (const std::exception& e) {
      ok = false;
      detail += "Gamma=" + fmt(gamma) + ": " + e.what() + "; ";
    }
  }
  return {"nonreciprocity", ok, detail};
}

CheckResult epsilon_check(const ValidationOptions& opt) {
  SystemParams p;
  p.coop_rf = coop_rf_for_w(p, 0.94);
  const DriftMatrix m = opt.drift(p);
  const PerturbationMatrix v = build_perturbation(p);
  const CouplingMatrix l = build_coupling(p);
  const ScatteringPair pair = scatter(m, v, l);
  std::vector<double> scaled;
  for (double eps : {1e-6, 1e-5, 1e-4, 1e-3}) {
    const CMatrix exact = scattering_exact(m, v, l, eps);
    scaled.push_back((exact - pair.s0 - eps * pair.s1).norm() / (eps * eps));
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  const bool ok = *lo > 0.0 && *hi / *lo < 1.5;
  std::string detail = "residual/eps^2 =";
  for (double s : scaled) detail += " " + fmt(s);
  return {"epsilon_order", ok, detail};
}

CheckResult xi_bar_check(const ValidationOptions&) {
  const double exact = xi_bar();
  const double numeric = find_xi_bar_numeric();
  const bool ok = std::abs(exact - 0.0973) <= 2e-4 && std::abs(exact - numeric) < 1e-10 &&
                  denominator(local_w_opt(0.05), 0.05) < 1.0 &&
                  denominator(local_w_opt(0.11), 0.11) > 1.0;
  return {"xi_bar", ok, "radical " + fmt(exact) + ", bisection differs by " + fmt(exact - numeric)};
}

CheckResult w_opt_check(const ValidationOptions&) {
  const double at_bar = w_opt(xi_bar());
  const double small = w_opt(1e-9);
  const DenominatorMinimum d = minimize_denominator(0.05);
  const bool ok = std::abs(at_bar - 0.52) <= 0.01 && std::abs(small - 1.0) < 1e-6 &&
                  std::abs(d.w - w_opt(0.05)) < 1e-8;
  return {"w_opt_limits", ok,
          "w_opt(xi_bar) = " + fmt(at_bar) + ", w_opt(1e-9) - 1 = " + fmt(small - 1.0) +
              ", golden-section minimizer at xi = 0.05 differs by " + fmt(d.w - w_opt(0.05))};
}

CheckResult snr_equivalence_check(const ValidationOptions&) {
  std::mt19937_64 rng(7);
  double worst_full = 0.0;
  double worst_gap_ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    SystemParams p = random_symmetric(rng);
    // Operating range of the matching parameter; far above it Y grows like Gamma2.
    p.coop_rf = coop_rf_for_w(p, log_uniform(rng, 0.05, 3.0));
    const SensingReport rep = snr_matrix(p);
    const SmallParams sp = small_params(p);
    const UW c = uw(p);
    const double full = snr_closed(p, c.u, c.w, sp.X, sp.Y);
    const double bare = snr_closed(p, c.u, c.w, 0.0, 0.0);
    worst_full = std::max(worst_full, std::abs(rep.snr - full) / full);
    const double gap = std::abs(rep.snr - bare) / rep.snr;
    worst_gap_ratio = std::max(worst_gap_ratio, gap / (10.0 * p.gamma_lc / p.omega_lc));
  }
  const bool ok = worst_full < 1e-9 && worst_gap_ratio < 1.0;
  return {"snr_equivalence", ok,
          "max relative gap with X, Y: " + fmt(worst_full) +
              "; without, as a fraction of 10 gamma_LC/omega_LC: " + fmt(worst_gap_ratio)};
}

CheckResult oracle_check(const ValidationOptions&) {
  std::mt19937_64 rng(99);
  double worst_w = 0.0;
  double worst_r = 0.0;
  int accepted = 0;
  while (accepted < 100) {
    SystemParams p = random_symmetric(rng);
    p.detection = Detection::noise_coefficient(log_uniform(rng, 1.0, 300.0));
    const NoiseParams np = noise_params(p);
    if (!(np.xi < xi_bar())) continue;
    ++accepted;
    const Gamma2Optimum opt = maximize_over_gamma2(p);
    const double rm = r_max(np.xi);
    worst_w = std::max(worst_w, std::abs(opt.w - w_opt(np.xi)));
    worst_r = std::max(worst_r, std::abs(opt.r - rm) / rm);
  }
  const bool ok = worst_w < 1e-3 && worst_r < 5e-3;
  return {"oracle_maxima", ok,
          "100 draws: max |w* - w_opt| = " + fmt(worst_w) + ", max relative r gap = " + fmt(worst_r)};
}

CheckResult anchors_check(const ValidationOptions&) {
  const struct {
    Topology t;
    double expected;
  } cases[] = {{Topology::FourMode, 4.43}, {Topology::ThreeModeHigh, 5.33},
               {Topology::ThreeModeLow, 1.74}};
  bool ok = true;
  std::string detail;
  std::vector<double> found;
  for (const auto& c : cases) {
    SystemParams p;
    p.topology = c.t;
    p.detection = Detection::efficiency(1.0 / 11.0);
    const double numeric = maximize_over_gamma2(p).r;
    const double closed = r_max(noise_params(p).xi);
    found.push_back(numeric);
    ok = ok && std::abs(numeric - c.expected) / c.expected < 0.01 &&
         std::abs(numeric - closed) / closed < 0.01;
    detail += std::string(to_string(c.t)) + ": " + fmt(numeric) + " (closed " + fmt(closed) + "); ";
  }
  ok = ok && found[1] > found[0] && found[0] > found[2];
  return {"anchors", ok, detail};
}

CheckResult r_im_check(const ValidationOptions&) {
  SystemParams p;
  p.detection = Detection::efficiency(1.0 / 11.0);
  const NoiseParams np = noise_params(p);
  const double rim = r_im(np.rho, np.sigma);
  bool bound = true;
  const double xb = xi_bar();
  for (int i = 1; i <= 200; ++i) {
    const double xi = xb * i / 201.0;
    bound = bound && 1.0 / (16.0 * xi) <= r_max(xi) * (1.0 + 1e-12);
  }
  const bool ok = std::abs(rim - 4.17) / 4.17 < 0.01 && bound;
  return {"r_im_bound", ok, "r_im = " + fmt(rim) + (bound ? ", r_im <= r_max on grid" : ", bound violated")};
}

CheckResult crossover_check(const ValidationOptions&) {
  int mismatches = 0;
  int band = 0;
  const double gamma1 = 1e3;
  const double omega_1 = 2e6;
  for (int i = 0; i < 1000; ++i) {
    const double ratio = 1.5 + 8.5 * i / 999.0;
    SystemParams p;
    p.coop_optical = gamma1;
    p.omega_1 = omega_1;
    p.omega_2 = ratio * omega_1;
    p.omega_lc = 0.5 * (p.omega_1 + p.omega_2);
    const double u4 = uw(p).u;
    p.topology = Topology::ThreeModeHigh;
    const double u3 = uw(p).u;
    const bool exact = u3 < u4;
    const bool law = crossover_3v4(p.omega_lc, p.omega_2);
    if (exact != law) {
      // The high-temperature law is off by O(1/Gamma1) right at omega_2 = 3 omega_1.
      if (std::abs(ratio - 3.0) < 3.0 * 1e-3) {
        ++band;
      } else {
        ++mismatches;
      }
    }
  }
  return {"crossover", mismatches == 0,
          std::to_string(mismatches) + " mismatches on 1000 points (" + std::to_string(band) +
              " inside the 1e-3 band around omega_2 = 3 omega_1)"};
}

CheckResult temperature_check(const ValidationOptions&) {
  double lo = 1e300;
  double hi = 0.0;
  const auto rmax_at = [](double t) {
    SystemParams p;
    p.temperature = t;
    return r_max(noise_params(p).xi);
  };
  for (int i = 0; i < 50; ++i) {
    const double t = 0.05 * std::pow(100.0, i / 49.0);
    const double r = rmax_at(t);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  double t_unity = 0.0;
  for (double t = 1e-2; t > 1e-8; t /= 1.5) {
    if (rmax_at(t) == 1.0) {
      t_unity = t;
      break;
    }
  }
  const bool ok = hi / lo < 2.0 && t_unity > 0.0;
  return {"temperature", ok,
          "r_max over [0.05, 5] K in [" + fmt(lo) + ", " + fmt(hi) + "]; r_max = 1 at T = " + fmt(t_unity) + " K"};
}

CheckResult gauge_check(const ValidationOptions&) {
  std::mt19937_64 rng(31337);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    SystemParams p = random_symmetric(rng);
    p.topology = Topology::FourMode;
    p.perturbation = PerturbationMode::Dominant;
    const Couplings base = couplings_for(p);
    Couplings g = base;
    const double a = uniform(rng, -3.0, 3.0);
    const double b = uniform(rng, -3.0, 3.0);
    const double c = uniform(rng, -3.0, 3.0);
    // M carries g21* and g22* in the a2 row, so the gauge-invariant loop
    // phase is arg g11 - arg g12 + arg g21 - arg g22.
    g.g11 = std::abs(base.g11) * std::polar(1.0, p.phi + a);
    g.g12 = std::abs(base.g12) * std::polar(1.0, b);
    g.g21 = std::abs(base.g21) * std::polar(1.0, c);
    g.g22 = std::abs(base.g22) * std::polar(1.0, a - b + c);
    const CouplingMatrix l = build_coupling(p);
    const PerturbationMatrix v = build_perturbation(p);
    const ScatteringPair ref = scatter(build_drift(p, base), v, l);
    const ScatteringPair alt = scatter(build_drift(p, g), v, l);
    worst = std::max(worst, (ref.s0.cwiseAbs() - alt.s0.cwiseAbs()).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(std::abs(ref.s1(kRfPort, kRfPort)) -
                                     std::abs(alt.s1(kRfPort, kRfPort))) /
                                std::abs(ref.s1(kRfPort, kRfPort)));
  }
  return {"gauge_invariance", worst < 1e-9, "max change of |S| under regauging: " + fmt(worst)};
}

struct NamedCheck {
  const char* name;
  Check run;
};

const std::vector<NamedCheck>& checks() {
  static const std::vector<NamedCheck> all{
      {"occupancies", occupancies_check},
      {"s22_closed_form", s22_check},
      {"nonreciprocity", nonreciprocity_check},
      {"epsilon_order", epsilon_check},
      {"xi_bar", xi_bar_check},
      {"w_opt_limits", w_opt_check},
      {"snr_equivalence", snr_equivalence_check},
      {"oracle_maxima", oracle_check},
      {"anchors", anchors_check},
      {"r_im_bound", r_im_check},
      {"crossover", crossover_check},
      {"temperature", temperature_check},
      {"gauge_invariance", gauge_check},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& validation_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : checks()) v.emplace_back(c.name);
    return v;
  }();
  return names;
}

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  std::vector<CheckResult> results;
  for (const auto& c : checks()) {
    if (!options.filter.empty() && std::string(c.name).find(options.filter) == std::string::npos) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = c.run(options);
    } catch (const std::exception& e) {
      r = {c.name, false, std::string("threw: ") + e.what()};
    }
    r.name = c.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace rfsense
