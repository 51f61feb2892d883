#include <doctest.h>

#include "rfsense/validation.hpp"

using namespace rfsense;

TEST_CASE("check names are unique and filterable") {
  const auto& names = validation_check_names();
  CHECK(names.size() == 13);
  const auto one = run_validation({"xi_bar"});
  REQUIRE(one.size() == 1);
  CHECK(one[0].passed);
  CHECK(one[0].seconds >= 0.0);
  CHECK(run_validation({"no_such_check"}).empty());
}

TEST_CASE("a sign error in the drift matrix is caught") {
  ValidationOptions opt;
  opt.filter = "s22_closed_form";
  opt.drift = [](const SystemParams& p) {
    DriftMatrix m = build_drift(p);
    m.entries(kRfPort, 2) = -m.entries(kRfPort, 2);
    return m;
  };
  const auto res = run_validation(opt);
  REQUIRE(res.size() == 1);
  CHECK_FALSE(res[0].passed);
  opt.filter = "nonreciprocity";
  CHECK_FALSE(run_validation(opt)[0].passed);
}
