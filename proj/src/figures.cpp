#include "rfsense/figures.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rfsense/closed_form.hpp"
#include "rfsense/csv.hpp"
#include "rfsense/errors.hpp"

namespace rfsense {

namespace {

struct FigureInfo {
  const char* name;
  int points;
  const char* description;
};

constexpr FigureInfo kFigures[] = {
    {"r-vs-gamma2", 200, "relative SNR vs electromechanical cooperativity, three topologies"},
    {"rmax-vs-gamma1", 201, "optimized relative SNR vs optical cooperativity, three topologies"},
    {"rmax-heatmap-eta", 60, "four-mode r_max over (gamma1, eta), long format"},
    {"rmax-heatmap-zeta", 60, "four-mode r_max over (gamma1, zeta), long format"},
    {"snr-vs-zeta", 120, "four-mode SNR figures vs detection noise coefficient"},
    {"snr-vs-temperature", 120, "four-mode SNR figures vs temperature"},
    {"r-vs-phi", 401, "four-mode relative SNR vs loop phase, with nonreciprocal marker"},
    {"rmax-vs-xi", 200, "r_max and r_im vs xi below the threshold"},
};

const FigureInfo& info(std::string_view name) {
  for (const auto& f : kFigures) {
    if (name == f.name) return f;
  }
  std::string msg = "unknown figure '" + std::string(name) + "'; valid names:";
  for (const auto& f : kFigures) msg += std::string(" ") + f.name;
  throw ConfigurationError(msg);
}

std::string describe(const Axis& a) {
  std::ostringstream os;
  os << (a.scale == AxisScale::Log ? "log" : "linear") << " [" << format_number(a.lo) << ", "
     << format_number(a.hi) << "], " << a.points << " points";
  return os.str();
}

SystemParams four_mode_base(const ScenarioConfig& cfg) {
  SystemParams p = cfg.params;
  if (p.topology != Topology::FourMode) {
    p.topology = Topology::FourMode;
    p.omega_lc = 0.5 * (p.omega_1 + p.omega_2);
  }
  return p;
}

std::vector<std::string> per_topology(std::initializer_list<const char*> bases) {
  std::vector<std::string> out;
  for (const char* b : bases) {
    for (const char* t : {"four_mode", "three_mode_high", "three_mode_low"}) {
      out.push_back(std::string(b) + "[" + t + "]");
    }
  }
  return out;
}

ScanResult sweep_with_notes(SweepSpec spec, const ScenarioConfig& cfg, std::string_view figure,
                            std::vector<std::pair<std::string, std::string>> notes) {
  ScanResult r = run_sweep(spec);
  std::vector<std::pair<std::string, std::string>> meta{{"figure", std::string(figure)}};
  meta.emplace_back("axis." + spec.axis1.name, describe(spec.axis1));
  if (spec.axis2) meta.emplace_back("axis." + spec.axis2->name, describe(*spec.axis2));
  for (auto& n : notes) meta.push_back(std::move(n));
  meta.insert(meta.end(), r.metadata.begin(), r.metadata.end());
  meta.emplace_back("config", cfg.echo);
  r.metadata = std::move(meta);
  return r;
}

// Appends the quantity columns of `extra` (same grid) to `into`, renaming them.
void append_columns(ScanResult& into, const ScanResult& extra,
                    const std::vector<std::string>& names) {
  into.quantity_names.insert(into.quantity_names.end(), names.begin(), names.end());
  for (std::size_t i = 0; i < into.rows.size(); ++i) {
    const ScanRow& src = extra.rows[i];
    ScanRow& dst = into.rows[i];
    dst.values.insert(dst.values.end(), src.values.begin(), src.values.end());
    if (!src.stable) {
      dst.stable = false;
      if (dst.error.empty()) dst.error = src.error;
    }
  }
}

std::vector<FigureTable> r_vs_gamma2(const ScenarioConfig& cfg, int n) {
  SweepSpec s;
  s.axis1 = {"gamma2", 0.1, 1e3, n, AxisScale::Log};
  s.base = cfg.params;
  s.quantities = per_topology({"r", "r_im"});
  return {{"", sweep_with_notes(s, cfg, "r-vs-gamma2",
                                {{"note", "range brackets the peaks at w_opt (gamma1 + 1/2) and "
                                          "w_opt (gamma1 + 1); r_im columns are the w = 1 lines"}})}};
}

std::vector<FigureTable> rmax_vs_gamma1(const ScenarioConfig& cfg, int n) {
  SweepSpec s;
  s.axis1 = {"gamma1", 0.0, 200.0, n, AxisScale::Linear};
  s.base = cfg.params;
  s.quantities = per_topology({"r_max", "r_im", "r_opt_numeric"});
  return {{"", sweep_with_notes(s, cfg, "rmax-vs-gamma1",
                                {{"note", "r_opt_numeric maximizes the matrix-route SNR/SNR0 over "
                                          "gamma2 with the full perturbation"}})}};
}

std::vector<FigureTable> heatmap(const ScenarioConfig& cfg, int n, bool eta_axis) {
  SweepSpec s;
  s.axis1 = {"gamma1", 1.0, 1e3, n, AxisScale::Log};
  s.axis2 = eta_axis ? Axis{"eta", 1e-4, 1.0, n, AxisScale::Log}
                     : Axis{"zeta", 1e-1, 1e5, n, AxisScale::Log};
  s.base = four_mode_base(cfg);
  s.quantities = {"r_max", eta_axis ? "eta_threshold" : "zeta_threshold"};
  const char* name = eta_axis ? "rmax-heatmap-eta" : "rmax-heatmap-zeta";
  return {{"", sweep_with_notes(s, cfg, name,
                                {{"note", eta_axis ? "r_max > 1 exactly where eta > eta_threshold"
                                                   : "r_max > 1 exactly where zeta < zeta_threshold "
                                                     "(high-temperature form)"}})}};
}

std::vector<FigureTable> snr_vs(const ScenarioConfig& cfg, int n, bool zeta_axis) {
  SweepSpec s;
  s.axis1 = zeta_axis ? Axis{"zeta", 1e-1, 1e5, n, AxisScale::Log}
                      : Axis{"temperature", 1e-3, 10.0, n, AxisScale::Log};
  s.base = four_mode_base(cfg);
  if (!zeta_axis && s.base.detection.kind != Detection::Kind::NoiseCoefficient) {
    throw ConfigurationError("snr-vs-temperature needs zeta (eta would not vary with T)");
  }
  s.quantities = {"snr_max_per_unit", "snr0_closed_per_unit", "r_max",
                  "snr_im_per_unit",  "r_im",                 "snr_opt_numeric_per_unit",
                  "r_opt_numeric",    "eta"};
  return {{"", sweep_with_notes(s, cfg, zeta_axis ? "snr-vs-zeta" : "snr-vs-temperature",
                                {{"note", "SNR columns are SNR / (tau |beta|^2 eps^2)"}})}};
}

std::vector<FigureTable> r_vs_phi(const ScenarioConfig& cfg, int n) {
  const SystemParams base = four_mode_base(cfg);
  const Axis axis{"phi", -constants::pi, constants::pi, n, AxisScale::Linear};

  SystemParams reference = base;
  reference.phi = 0.0;
  reference.delta = 0.0;
  const double gamma2_ref = gamma2_for_rule(reference, Gamma2Rule::Optimal);

  SweepSpec fixed;
  fixed.axis1 = axis;
  fixed.base = base;
  fixed.base.delta = 0.0;
  fixed.base.coop_rf = gamma2_ref;
  fixed.quantities = {"r", "w"};

  SweepSpec tracking = fixed;
  tracking.adjust = [](SystemParams& p) { p.delta = delta_opt(p.coop_optical, p.gamma_m1, p.phi); };
  tracking.quantities = {"r", "w", "delta_opt"};

  const double gamma = base.coop_optical;
  const double gm = base.gamma_m1;
  const double delta_nr = 0.5 * gm * std::sqrt(2.0 * gamma - 1.0);
  const double phi_nr = std::arg(-cplx{gm, -2.0 * delta_nr} / cplx{gm, 2.0 * delta_nr});
  SweepSpec nonrecip = fixed;
  nonrecip.base.coop_rf = gamma;
  nonrecip.base.delta = delta_nr;
  nonrecip.quantities = {"r", "w"};

  ScanResult main = sweep_with_notes(
      fixed, cfg, "r-vs-phi",
      {{"gamma2", format_number(gamma2_ref) + " (optimal at phi = 0, delta = 0)"},
       {"nonreciprocal", "gamma1 = gamma2 = " + format_number(gamma) +
                             ", delta = " + format_number(delta_nr)}});
  main.quantity_names = {"r_delta0", "w_delta0"};
  append_columns(main, run_sweep(tracking), {"r_delta_opt", "w_delta_opt", "delta_opt"});
  append_columns(main, run_sweep(nonrecip), {"r_nonreciprocal", "w_nonreciprocal"});

  SystemParams at_nr = nonrecip.base;
  at_nr.phi = phi_nr;
  ScanResult marker;
  marker.metadata = {{"figure", "r-vs-phi"},
                     {"note", "nonreciprocal point; r_im_nr is sigma/(16 rho) at this point"},
                     {"revision", std::string(build_revision())}};
  marker.axis_names = {"phi_nr"};
  marker.quantity_names = {"delta_nr", "gamma", "r_nr", "r_im_nr", "w_nr", "s12_abs", "s21_abs"};
  ScanRow row;
  row.coords = {phi_nr};
  try {
    row.values = {delta_nr,
                  gamma,
                  evaluate_quantity(at_nr, "r", Gamma2Rule::Fixed),
                  evaluate_quantity(at_nr, "r_im", Gamma2Rule::Fixed),
                  evaluate_quantity(at_nr, "w", Gamma2Rule::Fixed),
                  evaluate_quantity(at_nr, "s12_abs", Gamma2Rule::Fixed),
                  evaluate_quantity(at_nr, "s21_abs", Gamma2Rule::Fixed)};
  } catch (const std::exception& e) {
    row.values.assign(marker.quantity_names.size(), std::nan(""));
    row.stable = false;
    row.error = e.what();
  }
  marker.rows.push_back(row);
  return {{"", std::move(main)}, {"_marker", std::move(marker)}};
}

std::vector<FigureTable> rmax_vs_xi(const ScenarioConfig& cfg, int n) {
  const double xb = xi_bar();
  ScanResult r;
  r.metadata = {{"figure", "rmax-vs-xi"},
                {"axis.xi", "linear, xi_bar i/(n+1) for i = 1..n (open interval (0, xi_bar)), " +
                                std::to_string(n) + " points"},
                {"xi_bar", format_number(xb)},
                {"revision", std::string(build_revision())},
                {"config", cfg.echo}};
  r.axis_names = {"xi"};
  r.quantity_names = {"r_max", "r_im", "difference", "w_opt"};
  for (int i = 1; i <= n; ++i) {
    const double xi = xb * i / (n + 1);
    ScanRow row;
    row.coords = {xi};
    const double rm = r_max(xi);
    const double ri = 1.0 / (16.0 * xi);
    row.values = {rm, ri, rm - ri, w_opt(xi)};
    r.rows.push_back(std::move(row));
  }
  return {{"", std::move(r)}};
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& f : kFigures) v.emplace_back(f.name);
    return v;
  }();
  return names;
}

int default_points(std::string_view name) { return info(name).points; }

std::vector<FigureTable> build_figure(std::string_view name, const ScenarioConfig& cfg,
                                      std::optional<int> points) {
  const FigureInfo& fig = info(name);
  const int n = points.value_or(fig.points);
  if (n < 2) throw ConfigurationError("--points must be at least 2");
  if (name == "r-vs-gamma2") return r_vs_gamma2(cfg, n);
  if (name == "rmax-vs-gamma1") return rmax_vs_gamma1(cfg, n);
  if (name == "rmax-heatmap-eta") return heatmap(cfg, n, true);
  if (name == "rmax-heatmap-zeta") return heatmap(cfg, n, false);
  if (name == "snr-vs-zeta") return snr_vs(cfg, n, true);
  if (name == "snr-vs-temperature") return snr_vs(cfg, n, false);
  if (name == "r-vs-phi") return r_vs_phi(cfg, n);
  return rmax_vs_xi(cfg, n);
}

std::vector<std::string> write_figure(std::string_view name, const ScenarioConfig& cfg,
                                      std::optional<std::string> out, std::optional<int> points) {
  const std::vector<FigureTable> tables = build_figure(name, cfg, points);
  const std::string path = out.value_or(std::string(name) + ".csv");
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  const std::string stem = has_ext ? path.substr(0, dot) : path;
  const std::string ext = has_ext ? path.substr(dot) : ".csv";

  std::vector<std::string> written;
  for (const FigureTable& t : tables) {
    const std::string file = t.suffix.empty() ? path : stem + t.suffix + ext;
    std::ofstream os(file, std::ios::binary);
    if (!os) throw ConfigurationError("cannot write '" + file + "'");
    write_csv(os, t.table);
    written.push_back(file);
  }
  return written;
}

}  // namespace rfsense
