#include "rfsense/scattering.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "rfsense/errors.hpp"

namespace rfsense {

namespace {

constexpr cplx I{0.0, 1.0};

// Indices of the active modes inside the full (a1, a2, b1, b2) ordering.
std::array<int, 4> active_modes(Topology t, int& n) {
  switch (t) {
    case Topology::FourMode:
      n = 4;
      return {0, 1, 2, 3};
    case Topology::ThreeModeHigh:
      n = 3;
      return {0, 1, 3, -1};
    case Topology::ThreeModeLow:
      n = 3;
      return {0, 1, 2, -1};
  }
  n = 4;
  return {0, 1, 2, 3};
}

CMatrix restrict(const Eigen::Matrix4cd& full, Topology t) {
  int n = 0;
  const auto idx = active_modes(t, n);
  CMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out(r, c) = full(idx[r], idx[c]);
  }
  return out;
}

}  // namespace

DriftMatrix build_drift(const SystemParams& p, const Couplings& g) {
  const double delta = p.effective_delta();
  Eigen::Matrix4cd m;
  // clang-format off
  m << p.kappa,            0.0,                I * g.g11,                       I * g.g12,
       0.0,                p.gamma_lc / 2.0,   -I * std::conj(g.g21),           -I * std::conj(g.g22),
       I * std::conj(g.g11), -I * g.g21,       p.gamma_m1 / 2.0 - I * delta,    0.0,
       I * std::conj(g.g12), -I * g.g22,       0.0,                             p.gamma_m2 / 2.0 + I * delta;
  // clang-format on
  return {restrict(-m, p.topology)};
}

DriftMatrix build_drift(const SystemParams& p) { return build_drift(p, couplings_for(p)); }

CouplingMatrix build_coupling(const SystemParams& p) {
  const std::array<double, 4> full{std::sqrt(2.0 * p.kappa), std::sqrt(p.gamma_lc),
                                   std::sqrt(p.gamma_m1), std::sqrt(p.gamma_m2)};
  int n = 0;
  const auto idx = active_modes(p.topology, n);
  CouplingMatrix l;
  l.diagonal.resize(n);
  for (int k = 0; k < n; ++k) l.diagonal(k) = full[idx[k]];
  return l;
}

PerturbationMatrix build_perturbation(const SystemParams& p, const SmallParams& sp) {
  Eigen::Matrix4cd v = Eigen::Matrix4cd::Zero();
  v(0, 0) = -sp.detuning_shift;
  v(1, 1) = p.omega_lc / 2.0 + sp.omega_lc_shift;
  v(1, 2) = std::conj(sp.gt21);
  v(1, 3) = std::conj(sp.gt22);
  v(2, 1) = sp.gt21;
  v(3, 1) = sp.gt22;
  return {restrict(I * v, p.topology)};
}

PerturbationMatrix build_perturbation(const SystemParams& p) {
  if (p.perturbation == PerturbationMode::Dominant) {
    return build_perturbation(p, zero_small_params());
  }
  return build_perturbation(p, perturbation_shifts(p));
}

double stability_check(const DriftMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> solver(m.entries, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    return std::numeric_limits<double>::infinity();
  }
  return solver.eigenvalues().real().maxCoeff();
}

void require_stable(const DriftMatrix& m) {
  const double lead = stability_check(m);
  if (!(lead < 0.0)) {
    std::ostringstream os;
    os << "drift matrix is unstable (max Re(lambda) = " << lead << ")";
    throw UnstableModelError(os.str(), lead);
  }
}

namespace {

Eigen::PartialPivLU<CMatrix> factor(const CMatrix& m, double& condition) {
  Eigen::PartialPivLU<CMatrix> lu(m);
  const double rcond = lu.rcond();
  condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!std::isfinite(condition) || !lu.matrixLU().allFinite()) {
    std::ostringstream os;
    os << "drift matrix is singular (condition estimate " << condition << ")";
    throw NumericalError(os.str(), condition);
  }
  return lu;
}

}  // namespace

CMatrix scattering_zeroth(const DriftMatrix& m, const CouplingMatrix& l, double* condition) {
  require_stable(m);
  double cond = 0.0;
  const auto lu = factor(m.entries, cond);
  if (condition != nullptr) *condition = cond;
  const CMatrix ld = l.dense();
  const Eigen::Index n = ld.rows();
  return CMatrix::Identity(n, n) + ld * lu.solve(ld);
}

CMatrix scattering_first_order(const DriftMatrix& m, const PerturbationMatrix& v,
                               const CouplingMatrix& l) {
  require_stable(m);
  double cond = 0.0;
  const auto lu = factor(m.entries, cond);
  const CMatrix ld = l.dense();
  const CMatrix right = lu.solve(ld);
  return -ld * lu.solve(v.entries * right);
}

CMatrix scattering_exact(const DriftMatrix& m, const PerturbationMatrix& v,
                         const CouplingMatrix& l, double epsilon) {
  const DriftMatrix shifted{m.entries + epsilon * v.entries};
  return scattering_zeroth(shifted, l);
}

ScatteringPair scatter(const DriftMatrix& m, const PerturbationMatrix& v,
                       const CouplingMatrix& l) {
  require_stable(m);
  ScatteringPair out;
  const auto lu = factor(m.entries, out.condition);
  out.ill_conditioned = out.condition > kConditionWarning;
  const CMatrix ld = l.dense();
  const Eigen::Index n = ld.rows();
  const CMatrix right = lu.solve(ld);
  out.s0 = CMatrix::Identity(n, n) + ld * right;
  out.s1 = -ld * lu.solve(v.entries * right);
  return out;
}

ScatteringPair scatter(const SystemParams& p) {
  return scatter(build_drift(p), build_perturbation(p), build_coupling(p));
}

double rf_reflection_closed(double w) {
  if (w < 0.0) throw DomainError("rf_reflection_closed: w must be >= 0");
  return (w - 1.0) / (w + 1.0);
}

}  // namespace rfsense
