#pragma once

#include <Eigen/Dense>

#include "rfsense/closed_form.hpp"
#include "rfsense/model.hpp"

namespace rfsense {

using CMatrix = Eigen::MatrixXcd;

/// Mode ordering inside every matrix: (a1, a2, b1, b2) for FourMode,
/// (a1, a2, b) for the three-mode topologies. The rf port is index 1.
inline constexpr Eigen::Index kOpticalPort = 0;
inline constexpr Eigen::Index kRfPort = 1;

/// Linear drift of the fluctuations, d/dt a = M a + L a_in.
struct DriftMatrix {
  CMatrix entries;
};

/// First-order change of the drift per unit epsilon.
struct PerturbationMatrix {
  CMatrix entries;
};

/// Diagonal input coupling sqrt(2 kappa), sqrt(gamma_LC), sqrt(gamma_mj).
struct CouplingMatrix {
  Eigen::VectorXd diagonal;
  CMatrix dense() const { return diagonal.cast<cplx>().asDiagonal(); }
};

/// S ~ S0 + eps S1.
struct ScatteringPair {
  CMatrix s0;
  CMatrix s1;
  double condition = 1.0;       // 1-norm condition estimate of M
  bool ill_conditioned = false;  // condition > 1e8
};

inline constexpr double kConditionWarning = 1e8;

DriftMatrix build_drift(const SystemParams& p, const Couplings& g);
DriftMatrix build_drift(const SystemParams& p);

CouplingMatrix build_coupling(const SystemParams& p);

PerturbationMatrix build_perturbation(const SystemParams& p, const SmallParams& sp);

/// Uses p.perturbation: Dominant keeps only the omega_LC/2 shift, Full adds
/// perturbation_shifts(p).
PerturbationMatrix build_perturbation(const SystemParams& p);

/// Largest real part over the eigenvalues of M. Stable iff negative.
double stability_check(const DriftMatrix& m);

/// Throws UnstableModelError when stability_check(m) >= 0.
void require_stable(const DriftMatrix& m);

/// S0 = 1 + L M^-1 L. Checks stability first; throws NumericalError for a
/// singular M. The optional out-parameter receives the condition estimate.
CMatrix scattering_zeroth(const DriftMatrix& m, const CouplingMatrix& l,
                          double* condition = nullptr);

/// S1 = -L M^-1 V M^-1 L.
CMatrix scattering_first_order(const DriftMatrix& m, const PerturbationMatrix& v,
                               const CouplingMatrix& l);

/// Full S at finite eps, 1 + L (M + eps V)^-1 L, without expansion.
CMatrix scattering_exact(const DriftMatrix& m, const PerturbationMatrix& v,
                         const CouplingMatrix& l, double epsilon);

ScatteringPair scatter(const DriftMatrix& m, const PerturbationMatrix& v, const CouplingMatrix& l);
ScatteringPair scatter(const SystemParams& p);

/// Closed-form rf reflection (w-1)/(w+1) of the symmetric setting.
double rf_reflection_closed(double w);

}  // namespace rfsense
