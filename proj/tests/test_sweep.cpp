#include <doctest.h>

#include <sstream>

#include "rfsense/closed_form.hpp"
#include "rfsense/csv.hpp"
#include "rfsense/errors.hpp"
#include "rfsense/measurement.hpp"
#include "rfsense/sweep.hpp"

using namespace rfsense;
using doctest::Approx;

TEST_CASE("axis validation and values") {
  CHECK_THROWS_AS((Axis{"gamma1", 1, 0, 5}.validate()), ConfigurationError);
  CHECK_THROWS_AS((Axis{"gamma1", 0, 1, 1}.validate()), ConfigurationError);
  CHECK_THROWS_AS((Axis{"gamma1", 0, 1, 5, AxisScale::Log}.validate()), ConfigurationError);
  CHECK_THROWS_AS((Axis{"colour", 0, 1, 5}.validate()), ConfigurationError);
  const auto lin = Axis{"gamma1", 0, 200, 5}.values();
  CHECK(lin == std::vector<double>{0, 50, 100, 150, 200});
  const auto lg = Axis{"eta", 1e-4, 1, 5, AxisScale::Log}.values();
  CHECK(lg.front() == 1e-4);
  CHECK(lg.back() == 1.0);
  CHECK(lg[2] == Approx(1e-2).epsilon(1e-12));
}

TEST_CASE("set_parameter") {
  SystemParams p;
  set_parameter(p, "omega_2", 1e7);
  CHECK(p.omega_lc == Approx(6e6));
  set_parameter(p, "gamma_m", 700);
  CHECK(p.gamma_m1 == 700);
  CHECK(p.gamma_m2 == 700);
  set_parameter(p, "eta", 0.2);
  CHECK(p.efficiency() == 0.2);
  set_parameter(p, "zeta", 10);
  CHECK(p.efficiency() == Approx(0.5));
  p.topology = Topology::ThreeModeHigh;
  set_parameter(p, "omega_1", 1e6);
  CHECK(p.omega_lc == Approx(6e6));
  CHECK_THROWS_AS(set_parameter(p, "nope", 1), ConfigurationError);
}

TEST_CASE("a single-point sweep matches direct evaluation") {
  SweepSpec s;
  s.axis1 = Axis{"gamma1", 60, 61, 2};
  s.gamma2_rule = Gamma2Rule::Optimal;
  s.quantities = {"r", "r_max", "u", "r[three_mode_high]", "r[three_mode_low]"};
  const ScanResult res = run_sweep(s);
  REQUIRE(res.rows.size() == 2);
  const ScanRow& row = res.rows[0];
  CHECK(row.stable);
  SystemParams p;
  p.coop_rf = gamma2_for_rule(p, Gamma2Rule::Optimal);
  CHECK(row.values[0] == snr_matrix(p).r);
  CHECK(row.values[1] == r_max(noise_params(p).xi));
  CHECK(row.values[2] == uw(p).u);
  CHECK(row.values[3] == Approx(5.33).epsilon(2e-3));
  CHECK(row.values[4] == Approx(1.74).epsilon(2e-3));
  CHECK(evaluate_quantity(SystemParams{}, "r", Gamma2Rule::Optimal) == row.values[0]);
  CHECK_THROWS_AS(evaluate_quantity(p, "r[two_mode]", Gamma2Rule::Fixed), std::exception);
  CHECK_THROWS_AS(evaluate_quantity(p, "bogus", Gamma2Rule::Fixed), ConfigurationError);
}

TEST_CASE("row order is axis2-major and output is reproducible") {
  SweepSpec s;
  s.axis1 = Axis{"gamma1", 0, 100, 4};
  s.axis2 = Axis{"eta", 1e-3, 1, 3, AxisScale::Log};
  s.gamma2_rule = Gamma2Rule::Optimal;
  s.quantities = {"r_max", "xi"};
  s.threads = 4;
  const ScanResult a = run_sweep(s);
  REQUIRE(a.rows.size() == 12);
  CHECK(a.rows[1].coords[0] == Approx(100.0 / 3));
  CHECK(a.rows[1].coords[1] == 1e-3);
  CHECK(a.rows[4].coords[1] == Approx(std::sqrt(1e-3)));
  s.threads = 1;
  const ScanResult b = run_sweep(s);
  std::ostringstream oa, ob;
  write_csv(oa, a);
  write_csv(ob, b);
  CHECK(oa.str() == ob.str());
}

TEST_CASE("failing points are flagged, not fatal") {
  SweepSpec s;
  s.axis1 = Axis{"gamma_m1", 400, 600, 3};
  s.quantities = {"u"};
  const ScanResult res = run_sweep(s);
  CHECK_FALSE(res.rows[0].stable);
  CHECK(res.rows[1].stable);
  CHECK_FALSE(res.rows[2].stable);
  CHECK(std::isnan(res.rows[0].values[0]));
  CHECK_FALSE(res.rows[0].error.empty());
}

TEST_CASE("CSV format") {
  CHECK(format_number(1.0) == "1.0000000000000000e+00");
  CHECK(format_number(-0.1) == "-1.0000000000000001e-01");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");

  ScanResult r;
  r.axis_names = {"gamma1"};
  r.quantity_names = {"r"};
  r.metadata = {{"revision", "abc"}};
  r.rows.push_back(ScanRow{{2.0}, {0.5}, true, ""});
  r.rows.push_back(ScanRow{{3.0}, {std::numeric_limits<double>::quiet_NaN()}, false, "x"});
  std::ostringstream os;
  write_csv(os, r);
  CHECK(os.str() ==
        "# revision: abc\n"
        "gamma1,r,stable\n"
        "2.0000000000000000e+00,5.0000000000000000e-01,1\n"
        "3.0000000000000000e+00,nan,0\n");
}

TEST_CASE("sweep metadata") {
  SweepSpec s;
  s.axis1 = Axis{"temperature", 0.05, 0.1, 2};
  s.quantities = {"n_a2"};
  s.gamma2_rule = Gamma2Rule::Matched;
  const ScanResult res = run_sweep(s);
  CHECK(res.metadata[0].first == "revision");
  CHECK_FALSE(res.metadata[0].second.empty());
  CHECK(res.metadata[1].second == "matched");
  CHECK(res.rows[1].values[0] == Approx(2617.91).epsilon(1e-5));
}
