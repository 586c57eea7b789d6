#include "symsector/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "symsector/qmat.hpp"

namespace symsector {

namespace {

constexpr double kClampTol = 1e-9;
constexpr double kNormTol = 1e-8;

// Clamp roundoff negatives of a spectrum that must be nonnegative.
template <typename V>
void clamp_nonnegative(V& values, const char* what) {
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < -kClampTol) throw ValidationError(std::string(what) + ": negative eigenvalue");
    values(i) = std::max(values(i), 0.0);
  }
}

void require_normalized(double norm, const char* what) {
  if (std::abs(norm - 1.0) > kNormTol) throw ValidationError(std::string(what) + ": state is not normalized");
}

unsigned cut_mask(Cut cut) {
  switch (cut) {
    case Cut::A: return QubitA;
    case Cut::B: return QubitB;
    case Cut::C: return QubitC;
  }
  return QubitA;
}

}  // namespace

double wootters_tangle(const Mat4& rho) {
  require_hermitian(rho, "wootters_tangle");
  if (std::abs(rho.trace() - 1.0) > kNormTol) throw ValidationError("wootters_tangle: trace is not 1");
  auto er = herm_eig(rho);
  Eigen::Vector4d p = er.values;
  clamp_nonnegative(p, "wootters_tangle");
  // rho = B B^dagger over the numerically nonzero spectrum; the square roots of the
  // eigenvalues of rho rho~ are the singular values of B^T (sy x sy) B
  const int rank = static_cast<int>((p.array() > 1e-12).count());
  if (rank == 0) return 0.0;
  CMatrix b = er.vectors.leftCols(rank) * p.head(rank).cwiseSqrt().cast<cplx>().asDiagonal();
  const Mat4 yy = kron(sigma_y(), sigma_y());
  CMatrix m = b.transpose() * yy * b;
  Eigen::VectorXd l = Eigen::JacobiSVD<CMatrix>(m).singularValues();
  double c = l(0);
  for (Eigen::Index i = 1; i < l.size(); ++i) c -= l(i);
  c = std::max(c, 0.0);
  return c * c;
}

double tau_bipartite(const PureState3Q& psi, Cut cut) {
  CMatrix r = partial_trace(psi.density(), cut_mask(cut));
  return std::max(4.0 * r.determinant().real(), 0.0);
}

double three_tangle(const PureState3Q& psi) {
  const Vec8& t = psi.amplitudes();
  const cplx t000 = t(0), t001 = t(1), t010 = t(2), t011 = t(3);
  const cplx t100 = t(4), t101 = t(5), t110 = t(6), t111 = t(7);
  cplx d1 = t000 * t111 * t011 * t100 + t000 * t111 * t101 * t010 + t000 * t111 * t110 * t001 +
            t011 * t100 * t101 * t010 + t011 * t100 * t110 * t001 + t101 * t010 * t110 * t001;
  cplx d2 = t000 * t110 * t101 * t011 + t111 * t001 * t010 * t100;
  cplx sq = t000 * t000 * t111 * t111 + t001 * t001 * t110 * t110 + t010 * t010 * t101 * t101 +
            t100 * t100 * t011 * t011;
  return 4.0 * std::abs(sq - 2.0 * d1 + 4.0 * d2);
}

EntanglementReport entanglement_report(const PureState3Q& psi) {
  require_normalized(psi.norm(), "entanglement_report");
  Mat8 rho = psi.density();
  EntanglementReport r;
  r.tau = three_tangle(psi);
  r.tau_ab = wootters_tangle(Mat4(partial_trace(rho, QubitA | QubitB)));
  r.tau_ac = wootters_tangle(Mat4(partial_trace(rho, QubitA | QubitC)));
  r.tau_bc = wootters_tangle(Mat4(partial_trace(rho, QubitB | QubitC)));
  r.tau_a_bc = tau_bipartite(psi, Cut::A);
  double worst = std::max({r.tau_a_bc, tau_bipartite(psi, Cut::B), tau_bipartite(psi, Cut::C)});
  r.separable = worst <= kClampTol;
  return r;
}

XInvariants x_invariants(const SymmetricState& s) {
  const cplx c0 = s.c(0), c1 = s.c(1), c2 = s.c(2), c3 = s.c(3);
  return {c0 * c2 - c1 * c1, c0 * c3 - c1 * c2, c1 * c3 - c2 * c2};
}

SeparabilityResult is_separable_symmetric(const SymmetricState& s, double tol) {
  XInvariants x = x_invariants(s);
  SeparabilityResult r;
  r.separable = std::max({std::abs(x.x2), std::abs(x.x3), std::abs(x.x4)}) <= tol;
  if (!r.separable) return r;
  // (c0,c1) and (c2,c3) are both proportional to phi; use the better conditioned pair
  Vec2 head(s.c(0), s.c(1)), tail(s.c(2), s.c(3));
  Vec2 phi = head.norm() >= tail.norm() ? head : tail;
  if (phi.norm() == 0) throw ValidationError("is_separable_symmetric: zero state");
  phi.normalize();
  int lead = std::abs(phi(0)) > 1e-12 ? 0 : 1;
  phi *= std::conj(phi(lead)) / std::abs(phi(lead));
  r.factor = phi;
  return r;
}

EntanglementReport symmetric_report(const SymmetricState& s) {
  require_normalized(s.norm(), "symmetric_report");
  XInvariants x = x_invariants(s);
  double z = std::abs(x.x3 * x.x3 - 4.0 * x.x2 * x.x4);
  double det_a = std::norm(x.x3) + 2.0 * std::norm(x.x2) + 2.0 * std::norm(x.x4);
  EntanglementReport r;
  r.tau = 4.0 * z;
  r.tau_ab = r.tau_ac = r.tau_bc = std::max(2.0 * (det_a - z), 0.0);
  r.tau_a_bc = 4.0 * det_a;
  r.separable = r.tau_a_bc <= kClampTol;
  return r;
}

namespace {

struct Jet {
  cplx z, dz;       // Z = X3^2 - 4 X2 X4 and its flow derivative
  double d, dd;     // |X3|^2 + 2|X2|^2 + 2|X4|^2 and its flow derivative
};

Jet flow_jet(const Mat4& f, const Vec4& c) {
  Eigen::Vector4d scale(1, std::sqrt(3.0), std::sqrt(3.0), 1);
  Vec4 v = scale.cast<cplx>().asDiagonal() * c;
  Vec4 dc = scale.cwiseInverse().cast<cplx>().asDiagonal() * (f * v);
  const cplx c0 = c(0), c1 = c(1), c2 = c(2), c3 = c(3);
  const cplx e0 = dc(0), e1 = dc(1), e2 = dc(2), e3 = dc(3);
  cplx x2 = c0 * c2 - c1 * c1, x3 = c0 * c3 - c1 * c2, x4 = c1 * c3 - c2 * c2;
  cplx dx2 = e0 * c2 + c0 * e2 - 2.0 * c1 * e1;
  cplx dx3 = e0 * c3 + c0 * e3 - e1 * c2 - c1 * e2;
  cplx dx4 = e1 * c3 + c1 * e3 - 2.0 * c2 * e2;
  Jet j;
  j.z = x3 * x3 - 4.0 * x2 * x4;
  j.dz = 2.0 * x3 * dx3 - 4.0 * (dx2 * x4 + x2 * dx4);
  j.d = std::norm(x3) + 2.0 * std::norm(x2) + 2.0 * std::norm(x4);
  j.dd = 2.0 * std::real(std::conj(x3) * dx3) + 4.0 * std::real(std::conj(x2) * dx2) +
         4.0 * std::real(std::conj(x4) * dx4);
  return j;
}

double measure_value(Measure m, const Vec4& c) {
  XInvariants x = x_invariants(SymmetricState(c));
  double z = std::abs(x.x3 * x.x3 - 4.0 * x.x2 * x.x4);
  if (m == Measure::three_tangle) return 4.0 * z;
  double d = std::norm(x.x3) + 2.0 * std::norm(x.x2) + 2.0 * std::norm(x.x4);
  return 2.0 * (d - z);
}

}  // namespace

TangentDerivative tangent_derivative(const Mat4& f, const SymmetricState& s, Measure measure,
                                     DerivativeMethod method) {
  if (skew_defect(f) > kHermitianTol) throw ValidationError("tangent_derivative: F is not skew-Hermitian");
  const Vec4 c = s.coords();
  const Jet j = flow_jet(f, c);
  const double az = std::abs(j.z), adz = std::abs(j.dz);
  const double scale = std::pow(s.norm(), 4);

  // derivative of |Z| along the flow, or its right limit at a kink
  TangentDerivative out;
  double dabs;
  if (az <= 1e-13 * scale) {
    dabs = adz;
    out.nonsmooth = adz > 1e-10 * scale;
  } else {
    dabs = std::real(std::conj(j.z) * j.dz) / az;
  }
  double analytic = measure == Measure::three_tangle ? 4.0 * dabs : 2.0 * (j.dd - dabs);

  if (method == DerivativeMethod::analytic || out.nonsmooth) {
    out.value = analytic;
    return out;
  }
  // keep the stencil on one side of any nearby zero of Z
  double h = 1e-5;
  if (adz > 0) h = std::min(h, az / (8.0 * adz));
  if (h < 1e-8) {
    out.value = analytic;
    return out;
  }
  Eigen::Vector4d scale_v(1, std::sqrt(3.0), std::sqrt(3.0), 1);
  Vec4 v = scale_v.cast<cplx>().asDiagonal() * c;
  auto at = [&](double t) {
    Vec4 vt = expm_skew(f, t) * v;
    return measure_value(measure, scale_v.cwiseInverse().cast<cplx>().asDiagonal() * vt);
  };
  out.value = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
  return out;
}

}  // namespace symsector
