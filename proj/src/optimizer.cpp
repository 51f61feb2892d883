#include "rfsense/optimizer.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "rfsense/closed_form.hpp"
#include "rfsense/errors.hpp"
#include "rfsense/measurement.hpp"

namespace rfsense {

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                      double rel_tol, double abs_floor, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (a > b) std::swap(a, b);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iterations; ++it) {
    const double scale = std::max({std::abs(a), std::abs(b), abs_floor});
    if (b - a <= rel_tol * scale) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ScalarMinimum out;
  out.iterations = it;
  if (fc < fd) {
    out.x = c;
    out.f = fc;
  } else {
    out.x = d;
    out.f = fd;
  }
  return out;
}

GridMinimum grid_then_golden(const std::function<double(double)>& f, double lo, double hi,
                             int grid_points, double rel_tol) {
  if (grid_points < 3) throw DomainError("grid_then_golden: need at least 3 grid points");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> xs(static_cast<std::size_t>(grid_points));
  std::vector<double> fs(xs.size(), nan);
  GridMinimum out;
  std::size_t best = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    try {
      fs[i] = f(xs[i]);
    } catch (const UnstableModelError&) {
      fs[i] = nan;
    }
    if (std::isnan(fs[i])) {
      ++out.skipped;
      continue;
    }
    if (best == xs.size() || fs[i] < fs[best]) best = i;
  }
  if (best == xs.size()) {
    throw UnstableModelError("no admissible grid point in search bracket", nan);
  }
  out.x = xs[best];
  out.f = fs[best];

  const std::size_t left = best == 0 ? 0 : best - 1;
  const std::size_t right = best + 1 < xs.size() ? best + 1 : best;
  if (right == left || std::isnan(fs[left]) || std::isnan(fs[right])) return out;

  const auto guarded = [&](double x) {
    try {
      const double v = f(x);
      return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    } catch (const UnstableModelError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const ScalarMinimum refined =
      golden_section_minimize(guarded, xs[left], xs[right], rel_tol, (hi - lo) * 1e-12);
  if (refined.f < out.f) {
    out.x = refined.x;
    out.f = refined.f;
  }
  return out;
}

Gamma2Optimum maximize_over_gamma2(const SystemParams& p, std::optional<double> upper) {
  p.validate();
  const double minimum_upper = 10.0 * (p.coop_optical + 1.0);
  double hi = 0.0;
  if (upper) {
    if (*upper < minimum_upper) {
      throw DomainError("maximize_over_gamma2: bracket must reach 10 (Gamma1 + 1)");
    }
    hi = *upper;
  } else {
    hi = std::max(minimum_upper, coop_rf_for_w(p, 3.0));
  }

  SystemParams trial = p;
  const auto objective = [&trial](double coop_rf) {
    trial.coop_rf = coop_rf;
    return -snr_per_unit_matrix(trial);
  };
  const GridMinimum best = grid_then_golden(objective, 0.0, hi, 256, 1e-8);

  Gamma2Optimum out;
  out.coop_rf = best.x;
  out.snr_per_unit = -best.f;
  trial.coop_rf = 0.0;
  out.snr0_per_unit = snr_per_unit_matrix(trial);
  out.r = out.snr_per_unit / out.snr0_per_unit;
  out.excluded_points = best.skipped;
  trial.coop_rf = best.x;
  try {
    out.w = uw(trial).w;
  } catch (const PreconditionError&) {
    out.w = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

namespace {

// Derivative of the polynomial d(w), written out directly.
double denominator_slope(double w, double xi) {
  const double a = 1.0 - 2.0 * xi;
  return 2.0 * (1.0 + w) * (w * w - 2.0 * a * w + 1.0) + (1.0 + w) * (1.0 + w) * (2.0 * w - 2.0 * a);
}

double bisect_slope(double lo, double hi, double xi) {
  double f_lo = denominator_slope(lo, xi);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = denominator_slope(mid, xi);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

DenominatorMinimum minimize_denominator(double xi) {
  if (!(xi > 0.0)) throw DomainError("minimize_denominator: xi must be > 0");
  constexpr int kGrid = 512;
  constexpr double kSpan = 2.0;  // d grows like w^4; every minimum sits in [0, 1]
  const auto at = [](int i) { return kSpan * i / (kGrid - 1); };
  const auto d = [xi](double w) { return denominator(w, xi); };

  std::optional<double> local;
  for (int i = 1; i < kGrid; ++i) {
    if (denominator_slope(at(i - 1), xi) < 0.0 && denominator_slope(at(i), xi) >= 0.0 &&
        i - 1 > 0) {
      // Golden section on d inside the sign-change cell and its neighbours,
      // then polish on the slope (golden section alone stalls near 1e-8).
      const double lo = at(std::max(i - 2, 0));
      const double hi = at(std::min(i + 1, kGrid - 1));
      const ScalarMinimum g = golden_section_minimize(d, lo, hi, 1e-10);
      const double half = std::max(1e-6, 10.0 * (hi - lo) * 1e-10);
      const double a = std::max(lo, g.x - half);
      const double b = std::min(hi, g.x + half);
      local = (denominator_slope(a, xi) < 0.0 && denominator_slope(b, xi) >= 0.0)
                  ? bisect_slope(a, b, xi)
                  : bisect_slope(at(i - 1), at(i), xi);
      break;
    }
  }
  if (!local) {
    // Tangency: the slope touches zero without changing sign (xi = 1/9).
    int best = 1;
    for (int i = 1; i + 1 < kGrid; ++i) {
      if (denominator_slope(at(i), xi) < denominator_slope(at(best), xi)) best = i;
    }
    if (best > 0 && best + 1 < kGrid && denominator_slope(at(best), xi) < 1e-3) {
      const auto slope = [xi](double w) { return denominator_slope(w, xi); };
      const ScalarMinimum g = golden_section_minimize(slope, at(best - 1), at(best + 1), 1e-12);
      if (std::abs(g.f) < 1e-12) local = g.x;
    }
  }

  DenominatorMinimum out;
  out.w = 0.0;
  out.d = d(0.0);
  if (local) {
    out.local_w = *local;
    out.local_d = d(*local);
    if (*out.local_d < out.d) {
      out.w = *local;
      out.d = *out.local_d;
    }
  }
  return out;
}

double find_xi_bar_numeric() {
  const auto gap = [](double xi) { return denominator(local_w_opt(xi), xi) - 1.0; };
  double lo = 1e-6;
  double hi = 1.0 / 9.0 - 1e-6;
  double g_lo = gap(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = gap(mid);
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rfsense
