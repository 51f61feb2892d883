#include "rfsense/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "rfsense/closed_form.hpp"
#include "rfsense/errors.hpp"
#include "rfsense/measurement.hpp"
#include "rfsense/optimizer.hpp"
#include "rfsense/scattering.hpp"

#ifndef RFSENSE_GIT_HASH
#define RFSENSE_GIT_HASH "unknown"
#endif

namespace rfsense {

std::string_view build_revision() { return RFSENSE_GIT_HASH; }

std::string_view to_string(Gamma2Rule r) {
  switch (r) {
    case Gamma2Rule::Fixed:
      return "fixed";
    case Gamma2Rule::Optimal:
      return "opt";
    case Gamma2Rule::Matched:
      return "matched";
  }
  return "fixed";
}

const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> names{
      "omega_lc", "gamma_lc", "omega_1", "omega_2", "gamma_m",     "gamma_m1", "gamma_m2",
      "kappa",    "delta",    "phi",     "temperature", "gamma1",  "gamma2",   "eta",
      "zeta",     "epsilon",  "tau"};
  return names;
}

const std::vector<std::string>& quantity_names() {
  static const std::vector<std::string> names{
      "u",           "w",           "xi",           "rho",
      "sigma",       "w_opt",       "r",            "r_closed",
      "r_max",       "r_im",        "snr_per_unit", "snr0_per_unit",
      "snr0_closed_per_unit",       "snr_max_per_unit", "snr_im_per_unit",
      "s22_abs",     "s12_abs",     "s21_abs",      "sx_out",
      "stability_margin",           "r_opt_numeric", "gamma2_opt_numeric",
      "w_opt_numeric",              "snr_opt_numeric_per_unit",
      "eta",         "gamma2",      "delta_opt",    "eta_threshold",
      "zeta_threshold",             "n_a2",         "n_b1",
      "n_b2"};
  return names;
}

void Axis::validate() const {
  const auto& names = parameter_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigurationError("unknown sweep parameter '" + name + "'");
  }
  if (points < 2) throw ConfigurationError("axis '" + name + "' needs at least 2 points");
  if (!(lo < hi)) throw ConfigurationError("axis '" + name + "' range must satisfy lo < hi");
  if (scale == AxisScale::Log && !(lo > 0.0)) {
    throw ConfigurationError("log axis '" + name + "' needs a positive lower bound");
  }
}

std::vector<double> Axis::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    v[static_cast<std::size_t>(i)] =
        scale == AxisScale::Linear ? lo + (hi - lo) * t
                                   : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t);
  }
  // Pin the end points exactly.
  v.front() = lo;
  v.back() = hi;
  return v;
}

namespace {

struct QuantityRef {
  std::string base;
  std::optional<Topology> topology;
};

QuantityRef parse_quantity(std::string_view q) {
  QuantityRef ref;
  const auto open = q.find('[');
  if (open == std::string_view::npos) {
    ref.base = std::string(q);
  } else {
    if (q.back() != ']') throw ConfigurationError("malformed quantity '" + std::string(q) + "'");
    ref.base = std::string(q.substr(0, open));
    ref.topology = topology_from_string(q.substr(open + 1, q.size() - open - 2));
  }
  const auto& names = quantity_names();
  if (std::find(names.begin(), names.end(), ref.base) == names.end()) {
    throw ConfigurationError("unknown quantity '" + ref.base + "'");
  }
  return ref;
}

void switch_topology(SystemParams& p, Topology t) {
  if (p.topology == t) return;
  p.topology = t;
  if (t == Topology::FourMode) p.omega_lc = 0.5 * (p.omega_1 + p.omega_2);
}

}  // namespace

void SweepSpec::validate() const {
  axis1.validate();
  if (axis2) {
    axis2->validate();
    if (axis2->name == axis1.name) throw ConfigurationError("sweep axes must differ");
  }
  if (quantities.empty()) throw ConfigurationError("sweep needs at least one quantity");
  for (const auto& q : quantities) parse_quantity(q);
}

void set_parameter(SystemParams& p, std::string_view name, double value) {
  if (name == "omega_lc") {
    p.omega_lc = value;
  } else if (name == "gamma_lc") {
    p.gamma_lc = value;
  } else if (name == "omega_1" || name == "omega_2") {
    (name == "omega_1" ? p.omega_1 : p.omega_2) = value;
    if (p.topology == Topology::FourMode) p.omega_lc = 0.5 * (p.omega_1 + p.omega_2);
  } else if (name == "gamma_m") {
    p.gamma_m1 = p.gamma_m2 = value;
  } else if (name == "gamma_m1") {
    p.gamma_m1 = value;
  } else if (name == "gamma_m2") {
    p.gamma_m2 = value;
  } else if (name == "kappa") {
    p.kappa = value;
  } else if (name == "delta") {
    p.delta = value;
  } else if (name == "phi") {
    p.phi = value;
  } else if (name == "temperature") {
    p.temperature = value;
  } else if (name == "gamma1") {
    p.coop_optical = value;
  } else if (name == "gamma2") {
    p.coop_rf = value;
  } else if (name == "eta") {
    p.detection = Detection::efficiency(value);
  } else if (name == "zeta") {
    p.detection = Detection::noise_coefficient(value);
  } else if (name == "epsilon") {
    p.epsilon = value;
  } else if (name == "tau") {
    p.tau = value;
  } else {
    throw ConfigurationError("unknown parameter '" + std::string(name) + "'");
  }
}

double gamma2_for_rule(const SystemParams& p, Gamma2Rule rule) {
  switch (rule) {
    case Gamma2Rule::Fixed:
      return p.coop_rf;
    case Gamma2Rule::Optimal:
      return coop_rf_for_w(p, w_opt(noise_params(p).xi));
    case Gamma2Rule::Matched:
      return coop_rf_for_w(p, 1.0);
  }
  return p.coop_rf;
}

double evaluate_quantity(const SystemParams& base, std::string_view quantity, Gamma2Rule rule) {
  const QuantityRef ref = parse_quantity(quantity);
  SystemParams p = base;
  if (ref.topology) switch_topology(p, *ref.topology);
  p.validate();
  p.coop_rf = gamma2_for_rule(p, rule);
  const std::string& q = ref.base;

  if (q == "u" || q == "w" || q == "xi" || q == "rho" || q == "sigma" || q == "w_opt" ||
      q == "r_closed" || q == "r_max" || q == "r_im" || q == "snr0_closed_per_unit" ||
      q == "snr_max_per_unit" || q == "snr_im_per_unit") {
    const NoiseParams np = noise_params(p);
    const double eta = p.efficiency();
    if (q == "u") return np.u;
    if (q == "w") return np.w;
    if (q == "xi") return np.xi;
    if (q == "rho") return np.rho;
    if (q == "sigma") return np.sigma;
    if (q == "w_opt") return w_opt(np.xi);
    if (q == "r_closed") return r_relative(eta, occupancies(p).n_a2, np.u, np.w);
    if (q == "r_max") return r_max(np.xi);
    if (q == "r_im") return r_im(np.rho, np.sigma);
    if (q == "snr0_closed_per_unit") return snr0_per_unit(eta, p.omega_lc, p.gamma_lc, np.sigma);
    if (q == "snr_max_per_unit") {
      return snr_max_per_unit(eta, p.omega_lc, p.gamma_lc, np.rho, np.sigma);
    }
    return snr_im_per_unit(eta, p.omega_lc, p.gamma_lc, np.rho);
  }
  if (q == "r" || q == "snr_per_unit" || q == "snr0_per_unit" || q == "sx_out") {
    const SensingReport rep = snr_matrix(p);
    if (q == "r") return rep.r;
    if (q == "snr_per_unit") return rep.snr_per_unit;
    if (q == "snr0_per_unit") return rep.snr0_per_unit;
    return rep.sx_out;
  }
  if (q == "s22_abs" || q == "s12_abs" || q == "s21_abs") {
    const CMatrix s0 = scattering_zeroth(build_drift(p), build_coupling(p));
    if (q == "s22_abs") return std::abs(s0(kRfPort, kRfPort));
    if (q == "s12_abs") return std::abs(s0(kOpticalPort, kRfPort));
    return std::abs(s0(kRfPort, kOpticalPort));
  }
  if (q == "stability_margin") return -stability_check(build_drift(p));
  if (q == "r_opt_numeric" || q == "gamma2_opt_numeric" || q == "w_opt_numeric" ||
      q == "snr_opt_numeric_per_unit") {
    const Gamma2Optimum opt = maximize_over_gamma2(p);
    if (q == "r_opt_numeric") return opt.r;
    if (q == "gamma2_opt_numeric") return opt.coop_rf;
    if (q == "w_opt_numeric") return opt.w;
    return opt.snr_per_unit;
  }
  if (q == "eta") return p.efficiency();
  if (q == "gamma2") return p.coop_rf;
  if (q == "delta_opt") return delta_opt(p.coop_optical, p.gamma_m1, p.phi);
  if (q == "eta_threshold") {
    const auto t = eta_threshold(occupancies(p).n_a2, uw(p).u);
    return t ? *t : std::numeric_limits<double>::infinity();
  }
  if (q == "zeta_threshold") {
    const double check = u_check(p.topology, p.coop_optical, p.omega_lc, p.omega_1, p.omega_2);
    return zeta_threshold(p.omega_lc, check, p.temperature);
  }
  const ThermalOccupancies n = occupancies(p);
  if (q == "n_a2") return n.n_a2;
  if (q == "n_b1") return n.n_b1;
  return n.n_b2;
}

ScanResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> xs = spec.axis1.values();
  const std::vector<double> ys = spec.axis2 ? spec.axis2->values() : std::vector<double>{0.0};
  const std::size_t total = xs.size() * ys.size();

  ScanResult out;
  out.axis_names.push_back(spec.axis1.name);
  if (spec.axis2) out.axis_names.push_back(spec.axis2->name);
  out.quantity_names = spec.quantities;
  out.rows.resize(total);
  out.metadata.emplace_back("revision", std::string(build_revision()));
  out.metadata.emplace_back("gamma2_rule", std::string(to_string(spec.gamma2_rule)));
  out.metadata.emplace_back("topology", std::string(to_string(spec.base.topology)));

  const auto evaluate_row = [&](std::size_t idx) {
    ScanRow& row = out.rows[idx];
    const std::size_t i = idx % xs.size();
    const std::size_t j = idx / xs.size();
    row.coords.push_back(xs[i]);
    if (spec.axis2) row.coords.push_back(ys[j]);
    row.values.assign(spec.quantities.size(), std::numeric_limits<double>::quiet_NaN());
    try {
      SystemParams p = spec.base;
      set_parameter(p, spec.axis1.name, xs[i]);
      if (spec.axis2) set_parameter(p, spec.axis2->name, ys[j]);
      if (spec.adjust) spec.adjust(p);
      for (std::size_t k = 0; k < spec.quantities.size(); ++k) {
        row.values[k] = evaluate_quantity(p, spec.quantities[k], spec.gamma2_rule);
      }
      if (std::any_of(row.values.begin(), row.values.end(),
                      [](double v) { return std::isnan(v); })) {
        row.stable = false;
        row.error = "non-finite result";
      }
    } catch (const std::exception& e) {
      row.stable = false;
      row.error = e.what();
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads =
      std::min<std::size_t>(total, spec.threads > 0 ? static_cast<std::size_t>(spec.threads) : hw);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) evaluate_row(idx);
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace rfsense
