#pragma once

#include "symsector/states.hpp"
#include "symsector/types.hpp"

namespace symsector {

struct XInvariants {
  cplx x2, x3, x4;
};

struct EntanglementReport {
  double tau = 0;  // three-tangle
  double tau_ab = 0, tau_ac = 0, tau_bc = 0;
  double tau_a_bc = 0;  // A against the pair BC
  bool separable = false;
};

// Pairwise tangle [max(l1 - l2 - l3 - l4, 0)]^2 from the spin-flip spectrum.
double wootters_tangle(const Mat4& rho_pair);

enum class Cut { A, B, C };
// 4 det of the single-qubit reduced state on the named side of the cut.
double tau_bipartite(const PureState3Q& psi, Cut cut);

// Hyperdeterminant form of the residual tangle; homogeneous of degree 4 in the amplitudes.
double three_tangle(const PureState3Q& psi);

// General path: reduced states, Wootters spectra, hyperdeterminant. psi must be normalized.
EntanglementReport entanglement_report(const PureState3Q& psi);

XInvariants x_invariants(const SymmetricState& s);

struct SeparabilityResult {
  bool separable = false;
  Vec2 factor = Vec2::Zero();  // phi with s = phi x phi x phi up to scale, when separable
};
SeparabilityResult is_separable_symmetric(const SymmetricState& s, double tol = 1e-9);

// Fast path through X2, X3, X4. s must be normalized.
EntanglementReport symmetric_report(const SymmetricState& s);

enum class Measure { three_tangle, pairwise };
enum class DerivativeMethod { central_difference, analytic };

struct TangentDerivative {
  double value = 0;
  // the measure has a kink at s along this flow; value is then the right derivative
  bool nonsmooth = false;
};

// d/dt measure(e^{Ft} c)|_{t=0} with F acting on (c0, sqrt3 c1, sqrt3 c2, c3).
TangentDerivative tangent_derivative(const Mat4& f, const SymmetricState& s, Measure measure,
                                     DerivativeMethod method = DerivativeMethod::central_difference);

}  // namespace symsector
