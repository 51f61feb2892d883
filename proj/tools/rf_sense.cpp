#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rfsense/closed_form.hpp"
#include "rfsense/config.hpp"
#include "rfsense/csv.hpp"
#include "rfsense/errors.hpp"
#include "rfsense/figures.hpp"
#include "rfsense/measurement.hpp"
#include "rfsense/validation.hpp"

namespace {

enum ExitCode { kOk = 0, kValidationFailed = 1, kConfigError = 2, kUnstable = 3 };

int cmd_report(const std::optional<std::string>& config, const std::vector<std::string>& sets) {
  const rfsense::ScenarioConfig cfg = rfsense::load_config(config, sets);
  const rfsense::SystemParams p = rfsense::resolve(cfg);
  const rfsense::SensingReport rep = rfsense::snr_matrix(p);
  const auto& d = rep.diag;
  const double nan = std::nan("");
  const double rmax = d.closed_form_valid ? rfsense::r_max(d.xi) : nan;
  const double rim = d.closed_form_valid ? rfsense::r_im(d.rho, d.sigma) : nan;

  rfsense::CsvWriter w(std::cout);
  w.header({"u", "w", "xi", "rho", "sigma", "w_opt", "snr_per_unit", "snr0_per_unit", "r",
            "r_max", "r_im", "s22_abs", "sx_out", "stability_margin"});
  w.row({d.u, d.w, d.xi, d.rho, d.sigma, d.w_opt, rep.snr_per_unit, rep.snr0_per_unit, rep.r,
         rmax, rim, std::abs(rep.s22), rep.sx_out, -rep.stability});
  if (rep.ill_conditioned) {
    std::cerr << "warning: drift matrix condition estimate " << rep.condition << "\n";
  }
  if (!rep.tau_valid) {
    std::cerr << "warning: tau is not long compared with the correlation time "
              << rep.correlation_time << " s\n";
  }
  return kOk;
}

int cmd_figure(const std::string& name, const std::optional<std::string>& config,
               const std::optional<std::string>& out, const std::optional<int>& points,
               const std::vector<std::string>& sets) {
  const rfsense::ScenarioConfig cfg = rfsense::load_config(config, sets);
  for (const std::string& file : rfsense::write_figure(name, cfg, out, points)) {
    std::cerr << "wrote " << file << "\n";
  }
  return kOk;
}

int cmd_validate(const std::string& filter) {
  rfsense::ValidationOptions opt;
  opt.filter = filter;
  const auto results = rfsense::run_validation(opt);
  if (results.empty()) {
    std::cerr << "no validation check matches '" << filter << "'\n";
    return kConfigError;
  }
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.seconds << " s): " << r.detail
              << "\n";
    if (!r.passed) ++failed;
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size()
            << " checks passed\n";
  return failed == 0 ? kOk : kValidationFailed;
}

std::string figure_help() {
  std::string s = "Figure name. Default grid sizes:";
  for (const auto& n : rfsense::figure_names()) {
    s += "\n  " + n + " (" + std::to_string(rfsense::default_points(n)) + ")";
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optomechanically assisted rf sensing: reports, figure data and self-checks"};
  app.require_subcommand(1);

  std::optional<std::string> config;
  std::vector<std::string> sets;

  auto* report = app.add_subcommand("report", "Single-scenario CSV row on standard output");
  report->add_option("--config", config, "Scenario file (JSON, spec_version 1)");
  report->add_option("--set", sets, "Override a key, e.g. --set gamma2=40 (repeatable)");

  std::string figure_name;
  std::optional<std::string> out;
  std::optional<int> points;
  auto* figure = app.add_subcommand("figure", "Write the CSV data of a figure");
  figure->add_option("name", figure_name, figure_help())->required();
  figure->add_option("--config", config, "Scenario file (JSON, spec_version 1)");
  figure->add_option("--out", out, "Output CSV path (default <name>.csv)");
  figure->add_option("--points", points, "Grid points per axis (default per figure, see name)");
  figure->add_option("--set", sets, "Override a key (repeatable)");

  std::string filter;
  auto* validate = app.add_subcommand("validate", "Run the invariant suite");
  validate->add_option("--filter", filter, "Only run checks whose name contains this text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*report) return cmd_report(config, sets);
    if (*figure) return cmd_figure(figure_name, config, out, points, sets);
    if (*validate) return cmd_validate(filter);
  } catch (const rfsense::UnstableModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnstable;
  } catch (const rfsense::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rfsense::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailed;
  }
  return kOk;
}
