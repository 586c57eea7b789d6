#include "symsector/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "symsector/qmat.hpp"

namespace symsector {

DecompositionParams::DecompositionParams(double a, double b, double c) : a_(a), b_(b), c_(c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw ValidationError("decomposition parameters must be finite");
  if (a == 0 && b == 0 && c == 0) throw ValidationError("decomposition parameters must not all vanish");
}

double DecompositionParams::lambda() const {
  return 2.0 * std::sqrt(3 * c_ * c_ + 3 * c_ * b_ + 3 * b_ * b_ + 3 * a_ * a_);
}

DecompositionParams DecompositionParams::normalized() const {
  double n = std::sqrt(a_ * a_ + b_ * b_ + c_ * c_);
  return {a_ / n, b_ / n, c_ / n};
}

std::array<Mat8, 5> commutant_basis() {
  const Mat2 id = Mat2::Identity();
  const std::array<Mat2, 3> s{sigma_x(), sigma_y(), sigma_z()};
  std::array<Mat8, 5> e;
  e[0] = Mat8::Identity();
  e[1] = e[2] = e[3] = Mat8::Zero();
  for (const Mat2& p : s) {
    e[1] += kron(p, id, p);
    e[2] += kron(p, p, id);
    e[3] += kron(id, p, p);
  }
  e[4] = kron(s[0], Mat4(kron(s[1], s[2]) - kron(s[2], s[1]))) +
         kron(s[1], Mat4(kron(s[2], s[0]) - kron(s[0], s[2]))) +
         kron(s[2], Mat4(kron(s[0], s[1]) - kron(s[1], s[0])));
  return e;
}

CartanFamily cartan_family(const DecompositionParams& p) {
  auto e = commutant_basis();
  CartanFamily f;
  f.f1 = e[0];
  f.f2 = e[1] + e[2] + e[3];
  f.f3 = p.a() * e[4] + p.b() * (e[1] - e[2]) + p.c() * (e[1] - e[3]);
  f.lambda = p.lambda();
  return f;
}

Projectors projectors(const DecompositionParams& p) {
  CartanFamily f = cartan_family(p.normalized());
  Projectors out;
  out.pi1 = 0.5 * (f.f1 + f.f2 / 3.0);
  out.pi2 = 0.5 * (0.5 * f.f1 - f.f2 / 6.0 + f.f3 / f.lambda);
  out.pi3 = 0.5 * (0.5 * f.f1 - f.f2 / 6.0 - f.f3 / f.lambda);
  return out;
}

Vec8 SectorCoefficients::v() const {
  Vec8 out = Vec8::Zero();
  out(1) = x2;
  out(2) = x3;
  out(4) = x5;
  return out;
}

Vec8 SectorCoefficients::w() const {
  Vec8 out = Vec8::Zero();
  out(3) = x4;
  out(5) = x6;
  out(6) = x7;
  return out;
}

SectorCoefficients sector_coefficients(const DecompositionParams& p) {
  const double a = p.a(), b = p.b(), c = p.c(), l = p.lambda();
  SectorCoefficients x;
  x.x2 = 5.0 / 3.0 * l - 6 * b - 2.0 * I1 * a - 2 * c;
  x.x3 = -l / 3.0 + 6.0 * I1 * a - 4 * c + 2 * b;
  x.x5 = -(x.x2 + x.x3);
  x.x4 = 5.0 / 3.0 * l - 6 * c + 2.0 * I1 * a - 2 * b;
  x.x6 = -l / 3.0 - 6.0 * I1 * a - 4 * b + 2 * c;
  x.x7 = -(x.x4 + x.x6);
  return x;
}

DecompositionBases subspace_bases(const DecompositionParams& p) {
  DecompositionBases out;
  for (auto& v : out.w_basis) v.setZero();
  out.w_basis[0](0) = 1;
  out.w_basis[1](1) = out.w_basis[1](2) = out.w_basis[1](4) = 1;
  out.w_basis[2](3) = out.w_basis[2](5) = out.w_basis[2](6) = 1;
  out.w_basis[3](7) = 1;
  out.x = sector_coefficients(p);
  out.y = sector_coefficients(p.flipped());
  out.v1 = out.x.v();
  out.w1 = out.x.w();
  out.v2 = out.y.v();
  out.w2 = out.y.w();
  const double floor = 1e-9 * std::sqrt(p.a() * p.a() + p.b() * p.b() + p.c() * p.c());
  for (const Vec8* v : {&out.v1, &out.w1, &out.v2, &out.w2})
    if (v->norm() <= floor)
      throw ValidationError("subspace_bases: a sector basis vector vanishes at these parameters");
  out.pi = projectors(p);
  return out;
}

StateComponents decompose_state(const PureState3Q& psi, const DecompositionParams& p) {
  Projectors pi = projectors(p);
  const Vec8& v = psi.amplitudes();
  return {pi.pi1 * v, pi.pi2 * v, pi.pi3 * v};
}

namespace {

constexpr double kClusterTol = 1e-8;

// Refine an orthonormal set of columns so that h restricted to it is diagonal.
Mat8 refine(const Mat8& basis, const std::vector<std::vector<int>>& clusters, const Mat8& h,
            std::vector<std::vector<int>>& out_clusters) {
  Mat8 out = basis;
  out_clusters.clear();
  const double scale = std::max(1.0, h.norm());
  for (const auto& cl : clusters) {
    const int n = static_cast<int>(cl.size());
    CMatrix q(8, n);
    for (int k = 0; k < n; ++k) q.col(k) = basis.col(cl[k]);
    CMatrix sub = q.adjoint() * h * q;
    sub = (sub + sub.adjoint()).eval() / 2.0;
    auto e = herm_eig(sub);
    CMatrix rotated = q * e.vectors;
    int start = 0;
    while (start < n) {
      int stop = start + 1;
      while (stop < n && std::abs(e.values(stop) - e.values(start)) < kClusterTol * scale) ++stop;
      std::vector<int> idx;
      for (int k = start; k < stop; ++k) {
        out.col(cl[k]) = rotated.col(k);
        idx.push_back(cl[k]);
      }
      out_clusters.push_back(idx);
      start = stop;
    }
  }
  return out;
}

}  // namespace

InvariantSplit generic_invariant_split(const std::array<Mat8, 3>& f) {
  for (const Mat8& m : f) require_hermitian(m, "generic_invariant_split");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      double comm = (f[i] * f[j] - f[j] * f[i]).norm();
      if (comm > 1e-9 * std::max(1.0, f[i].norm() * f[j].norm()))
        throw ValidationError("generic_invariant_split: inputs do not commute");
    }

  // diagonalize F1, then F2 inside each F1 eigenspace, then F3
  std::vector<std::vector<int>> clusters{{0, 1, 2, 3, 4, 5, 6, 7}};
  Mat8 basis = Mat8::Identity();
  for (const Mat8& m : f) {
    std::vector<std::vector<int>> next;
    basis = refine(basis, clusters, m, next);
    clusters = next;
  }

  Eigen::Matrix<double, 3, 8> vals;
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 8; ++k) vals(r, k) = (basis.col(k).adjoint() * f[r] * basis.col(k))(0, 0).real();

  // column order: lexicographically descending eigenvalue triples
  std::array<int, 8> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    for (int r = 0; r < 3; ++r) {
      double d = vals(r, x) - vals(r, y);
      if (std::abs(d) > kClusterTol * std::max(1.0, std::abs(vals(r, x)))) return d > 0;
    }
    return false;
  });

  InvariantSplit out;
  out.m.resize(3, 8);
  for (int k = 0; k < 8; ++k) {
    out.m.col(k) = vals.col(order[k]);
    out.eigenvectors.col(k) = basis.col(order[k]);
  }
  auto rr = rref_with_transform(out.m);
  out.reduced = rr.reduced;
  out.transform = rr.transform;
  out.rank = rr.rank();
  out.rank_deficient = out.rank < 3;
  for (Eigen::Index j = 0; j < out.rank; ++j) {
    Mat8 combo = Mat8::Zero();
    for (int k = 0; k < 3; ++k) combo += out.transform(j, k) * f[k];
    combo = (combo + combo.adjoint()).eval() / 2.0;
    auto e = herm_eig(combo);
    std::vector<int> unit;
    for (int k = 0; k < 8; ++k)
      if (std::abs(e.values(k) - 1.0) < 1e-6) unit.push_back(k);
    CMatrix space(8, unit.size());
    for (std::size_t k = 0; k < unit.size(); ++k) space.col(k) = e.vectors.col(unit[k]);
    out.combinations.push_back(combo);
    out.subspaces.push_back(space);
  }
  return out;
}

}  // namespace symsector
