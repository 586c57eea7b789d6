#include "symsector/majorana.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "symsector/qmat.hpp"

namespace symsector {

namespace {

// Roots of a0 y^3 + a1 y^2 + a2 y + a3 (a0 != 0), through the companion matrix. A cluster
// that the coefficients cannot tell apart from a triple root is returned as one.
std::array<cplx, 3> cubic_roots(cplx a0, cplx a1, cplx a2, cplx a3) {
  const cplx b = a1 / a0, c = a2 / a0, d = a3 / a0;
  const cplx m = -b / 3.0;
  const double s = std::max(1.0, std::abs(m));
  // depressed form y = x - m: x^3 + p x + q
  const cplx p = c - b * b / 3.0;
  const cplx q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double noise = 1e-13;
  if (std::abs(p) < noise * s * s && std::abs(q) < noise * s * s * s) return {m, m, m};
  Eigen::Matrix3cd comp = Eigen::Matrix3cd::Zero();
  comp(0, 0) = -b, comp(0, 1) = -c, comp(0, 2) = -d;
  comp(1, 0) = 1, comp(2, 1) = 1;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp, false);
  Eigen::Vector3cd r = es.eigenvalues();
  return {r(0), r(1), r(2)};
}

std::array<cplx, 2> quadratic_roots(cplx a0, cplx a1, cplx a2) {
  const cplx disc = std::sqrt(a1 * a1 - 4.0 * a0 * a2);
  // pick the sign avoiding cancellation, then use the product of the roots
  const cplx big = std::abs(-a1 + disc) >= std::abs(-a1 - disc) ? -a1 + disc : -a1 - disc;
  if (std::abs(big) == 0) return {0.0, 0.0};
  const cplx r1 = big / (2.0 * a0);
  return {r1, (2.0 * a2) / big};
}

bool key_less(const ProjectiveQubit& a, const ProjectiveQubit& b) {
  Vec2 u = a.vector().normalized(), v = b.vector().normalized();
  const double ka = std::abs(u(1)), kb = std::abs(v(1));
  if (std::abs(ka - kb) > 1e-12) return ka < kb;
  return std::arg(u(0) * std::conj(u(1))) < std::arg(v(0) * std::conj(v(1)));
}

}  // namespace

Eigen::Vector3d ProjectiveQubit::bloch() const {
  const double n = std::norm(alpha) + std::norm(beta);
  const cplx ab = std::conj(alpha) * beta;
  return Eigen::Vector3d(2 * ab.real(), 2 * ab.imag(), std::norm(alpha) - std::norm(beta)) / n;
}

MajoranaTriple majorana_roots(const SymmetricState& s) {
  const std::array<cplx, 4> c{s.c(0), s.c(1), s.c(2), s.c(3)};
  double scale = 0;
  for (cplx v : c) scale = std::max(scale, std::abs(v));
  if (!(scale > 0) || !std::isfinite(scale)) throw ValidationError("majorana_roots: zero or non-finite state");

  // work in whichever of x and 1/x keeps the roots small
  const bool flip = std::abs(c[3]) > std::abs(c[0]);
  std::array<cplx, 4> a = flip ? std::array<cplx, 4>{c[3], 3.0 * c[2], 3.0 * c[1], c[0]}
                               : std::array<cplx, 4>{c[0], 3.0 * c[1], 3.0 * c[2], c[3]};
  int lead = 0;
  while (lead < 3 && std::abs(a[lead]) <= 1e-12 * scale) ++lead;

  std::vector<cplx> roots;
  if (lead == 0) {
    auto r = cubic_roots(a[0], a[1], a[2], a[3]);
    roots.assign(r.begin(), r.end());
  } else if (lead == 1) {
    auto r = quadratic_roots(a[1], a[2], a[3]);
    roots.assign(r.begin(), r.end());
  } else if (lead == 2) {
    roots.push_back(-a[3] / a[2]);
  }

  MajoranaTriple out;
  int k = 0;
  // factor (alpha x + beta) vanishes at x = -beta / alpha
  for (cplx x : roots) out[k++] = flip ? ProjectiveQubit{-x, 1.0} : ProjectiveQubit{1.0, -x};
  while (k < 3) out[k++] = flip ? ProjectiveQubit{1.0, 0.0} : ProjectiveQubit{0.0, 1.0};
  for (auto& q : out) {
    Vec2 v = q.vector().normalized();
    q = {v(0), v(1)};
  }
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

SymmetricState reconstruct(const MajoranaTriple& t) {
  const cplx a1 = t[0].alpha, a2 = t[1].alpha, a3 = t[2].alpha;
  const cplx b1 = t[0].beta, b2 = t[1].beta, b3 = t[2].beta;
  SymmetricState s(a1 * a2 * a3, (a1 * a2 * b3 + a1 * b2 * a3 + b1 * a2 * a3) / 3.0,
                   (a1 * b2 * b3 + b1 * a2 * b3 + b1 * b2 * a3) / 3.0, b1 * b2 * b3);
  if (!(s.norm() > 0)) throw NumericalError("reconstruct: symmetrized product vanished");
  return s.normalized();
}

double projective_fidelity(const ProjectiveQubit& a, const ProjectiveQubit& b) {
  return fidelity(a.vector(), b.vector());
}

double triple_fidelity(const MajoranaTriple& a, const MajoranaTriple& b) {
  std::array<int, 3> perm{0, 1, 2};
  double best = 0;
  do {
    double worst = 1;
    for (int i = 0; i < 3; ++i) worst = std::min(worst, projective_fidelity(a[i], b[perm[i]]));
    best = std::max(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::array<double, 3> bloch_angles(const SymmetricState& s) {
  const MajoranaTriple t = majorana_roots(s);
  std::array<double, 3> out;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d u = t[pairs[k][0]].bloch(), v = t[pairs[k][1]].bloch();
    // atan2 form stays accurate for nearly parallel vectors
    out[k] = std::atan2(u.cross(v).norm(), u.dot(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CanonicalForm canonical_form(const SymmetricState& s) {
  const ProjectiveQubit r = majorana_roots(s)[0];
  const double n = std::sqrt(std::norm(r.alpha) + std::norm(r.beta));
  // sends the first root to |0>, so the constant term of the new polynomial vanishes
  Mat2 x;
  x << std::conj(r.alpha), std::conj(r.beta), -r.beta, r.alpha;
  x /= n;

  auto apply = [](const Mat2& g, const SymmetricState& v) {
    return project_symmetric(PureState3Q(local_symmetric(g) * embed(v).amplitudes())).state;
  };
  const SymmetricState mid = apply(x, s);
  // diag(e^{i chi}, e^{-i chi}) multiplies c_k by e^{i chi (3 - 2k)}
  const double chi = (std::arg(mid.c(2)) - std::arg(mid.c(0))) / 4.0;
  // after Y, c0 and c2 both carry the phase (arg c0 + 3 arg c2) / 4
  const double theta = -(std::arg(mid.c(0)) + 3 * chi);
  Mat2 y = Vec2(std::exp(I1 * chi), std::exp(-I1 * chi)).asDiagonal();
  x = std::exp(I1 * theta / 3.0) * y * x;

  CanonicalForm out;
  out.x = x;
  out.state = apply(x, s);
  return out;
}

}  // namespace symsector
