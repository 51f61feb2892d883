#pragma once

#include <functional>
#include <optional>

#include "rfsense/model.hpp"

namespace rfsense {

struct ScalarMinimum {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
};

/// Golden-section search for a minimum of f on [a, b]. Stops once the bracket
/// is narrower than rel_tol * max(|x|, abs_floor).
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                      double rel_tol = 1e-8, double abs_floor = 1e-12,
                                      int max_iterations = 500);

/// Bracketing-and-refine search: evaluate f on a uniform grid, then refine the
/// best cell (and its neighbours) by golden section. Grid points where f
/// throws or returns NaN are skipped.
struct GridMinimum {
  double x = 0.0;
  double f = 0.0;
  int skipped = 0;
};

GridMinimum grid_then_golden(const std::function<double(double)>& f, double lo, double hi,
                             int grid_points = 256, double rel_tol = 1e-8);

/// Numerical maximisation of the matrix-route SNR over Gamma2.
struct Gamma2Optimum {
  double coop_rf = 0.0;
  double w = 0.0;  // closed-form w at coop_rf (NaN if not applicable)
  double snr_per_unit = 0.0;
  double snr0_per_unit = 0.0;
  double r = 0.0;
  int excluded_points = 0;
};

/// Searches Gamma2 in [0, upper]; upper defaults to max(10 (Gamma1 + 1), Gamma2 at w = 3)
/// and must be at least 10 (Gamma1 + 1). Unstable points are excluded; throws
/// UnstableModelError if every grid point is unstable.
Gamma2Optimum maximize_over_gamma2(const SystemParams& p, std::optional<double> upper = {});

/// Minimum of d(w) = (1+w)^2 [w^2 - 2(1-2 xi) w + 1] over w >= 0, found
/// numerically. The interior local minimum (if any) is reported separately.
struct DenominatorMinimum {
  double w = 0.0;
  double d = 1.0;
  std::optional<double> local_w;
  std::optional<double> local_d;
};

DenominatorMinimum minimize_denominator(double xi);

/// Bisection for the root of d(local_w_opt(xi)) - 1 on (1e-6, 1/9 - 1e-6).
double find_xi_bar_numeric();

}  // namespace rfsense
