#include "symsector/subspace2.hpp"

#include <algorithm>
#include <cmath>

#include "symsector/entanglement.hpp"
#include "symsector/qmat.hpp"

namespace symsector {

namespace {

struct KChoice {
  cplx k;
  KBranch branch;
};

KChoice coupling(const SectorCoefficients& x) {
  const double scale = std::max({std::abs(x.x2), std::abs(x.x3), std::abs(x.x5), std::abs(x.x4),
                                 std::abs(x.x6), std::abs(x.x7)});
  const double tol = 1e-10 * scale;
  if (std::abs(x.x6) < tol) return {x.x2 / x.x7, KBranch::x6_zero};
  if (std::abs(x.x7) < tol) return {x.x3 / x.x6, KBranch::x7_zero};
  return {x.x2 / x.x7, KBranch::generic};
}

}  // namespace

V1Analysis analyze_v1(const DecompositionParams& p) {
  DecompositionBases bases = subspace_bases(p);
  KChoice kc = coupling(bases.x);
  const double n = bases.v1.norm();
  const cplx x2 = bases.x.x2 / n, x3 = bases.x.x3 / n, x5 = bases.x.x5 / n;

  V1Analysis out;
  out.k = kc.k;
  out.branch = kc.branch;
  out.tau = three_tangle(PureState3Q(bases.v1 / n));
  if (out.tau > 1e-9) throw NumericalError("analyze_v1: three-tangle of a V1 state is not zero");
  out.tau_a_bc = 4.0 * (std::norm(x2) + std::norm(x3)) * std::norm(x5);
  out.mu = x5 * std::conj(x3);
  // rho_AB = |x2|^2 |00><00| + |x3 01 + x5 10><...|, whose concurrence is 2 |x3 x5|
  out.tau_ab = 4.0 * std::norm(out.mu);
  out.tau_ac = out.tau_a_bc - out.tau_ab;
  return out;
}

V1Analysis analyze_v2(const DecompositionParams& p) { return analyze_v1(p.flipped()); }

double Su2ActionResiduals::max() const { return std::max({hz_v1, hz_w1, hx_v1, hx_w1, hx2_v1}); }

Su2ActionResiduals su2_action_check(const DecompositionParams& p) {
  DecompositionBases bases = subspace_bases(p);
  const cplx k = coupling(bases.x).k;
  const double n = bases.v1.norm();
  const Vec8 v = bases.v1 / n, w = bases.w1 / n;
  const Mat8 hz = h_z(), hx = h_x();
  Su2ActionResiduals r;
  r.hz_v1 = (hz * v - v).norm();
  r.hz_w1 = (hz * w + w).norm() / std::max(w.norm(), 1e-300);
  r.hx_v1 = (hx * v + k * w).norm();
  r.hx_w1 = (hx * w + v / k).norm() / std::max(w.norm(), 1e-300);
  r.hx2_v1 = (hx * hx * v - v).norm();
  return r;
}

Mat8 local_step_unitary(const LocalStep& step) {
  Mat8 gen = step.axis == LocalStep::Axis::z ? Mat8(I1 * h_z()) : Mat8(-I1 * h_x());
  return expm_skew(gen, step.angle);
}

Mat8 compose_steps(const std::vector<LocalStep>& steps) {
  Mat8 u = Mat8::Identity();
  for (const LocalStep& s : steps) u = local_step_unitary(s) * u;
  return u;
}

std::vector<LocalStep> local_transitivity_demo(const DecompositionParams& p, const Vec8& start,
                                               const Vec8& target) {
  DecompositionBases bases = subspace_bases(p);
  for (const Vec8* v : {&start, &target}) {
    if (std::abs(v->norm() - 1.0) > 1e-8) throw ValidationError("local_transitivity_demo: state is not normalized");
    if ((bases.pi.pi2 * *v - *v).norm() > 1e-8) throw ValidationError("local_transitivity_demo: state is not in V1");
  }
  // {v1, k w1} is orthonormal after one common scaling; there H_z = sigma_z and H_x = -sigma_x,
  // so the generators act as i sigma_z and i sigma_x
  const cplx k = coupling(bases.x).k;
  const double n = bases.v1.norm();
  const Vec8 e1 = bases.v1 / n, e2 = k * bases.w1 / n;
  Vec2 a(e1.dot(start), e2.dot(start));
  Vec2 b(e1.dot(target), e2.dot(target));
  a.normalize();
  b.normalize();
  auto frame = [](const Vec2& v) {
    Mat2 m;
    m << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
    return m;
  };
  Mat2 u = frame(b) * frame(a).adjoint();  // SU(2), u a = b

  // u = e^{i sz alpha} e^{i sx beta} e^{i sz gamma}
  const cplx pp = u(0, 0), qq = u(1, 0);
  const double beta = std::atan2(std::abs(qq), std::abs(pp));
  double alpha, gamma;
  if (std::abs(qq) < 1e-14) {
    gamma = 0;
    alpha = std::arg(pp);
  } else if (std::abs(pp) < 1e-14) {
    alpha = -(std::arg(qq) - M_PI / 2) / 2;
    gamma = -alpha;
  } else {
    double sum = std::arg(pp), diff = std::arg(qq) - M_PI / 2;
    alpha = (sum - diff) / 2;
    gamma = (sum + diff) / 2;
  }
  std::vector<LocalStep> steps;
  auto push = [&](LocalStep::Axis axis, double angle) {
    double wrapped = std::remainder(angle, 2 * M_PI);
    if (std::abs(wrapped) > 1e-15) steps.push_back({axis, wrapped});
  };
  push(LocalStep::Axis::z, gamma);
  push(LocalStep::Axis::x, beta);
  push(LocalStep::Axis::z, alpha);
  return steps;
}

}  // namespace symsector
