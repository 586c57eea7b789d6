#include "symsector/states.hpp"

#include <algorithm>
#include <cmath>

#include "symsector/qmat.hpp"

namespace symsector {

Mat2 sigma_x() { return (Mat2() << 0, 1, 1, 0).finished(); }
Mat2 sigma_y() { return (Mat2() << 0, I1, -I1, 0).finished(); }
Mat2 sigma_z() { return (Mat2() << 1, 0, 0, -1).finished(); }

namespace {

Mat8 collective(const Mat2& s) {
  const Mat2 id = Mat2::Identity();
  return kron(s, id, id) + kron(id, s, id) + kron(id, id, s);
}

}  // namespace

Mat8 h_x() { return collective(sigma_x()); }
Mat8 h_y() { return collective(sigma_y()); }
Mat8 h_z() { return collective(sigma_z()); }

Mat8 h_zz() {
  const Mat2 id = Mat2::Identity();
  const Mat2 z = sigma_z();
  return kron(z, z, id) + kron(id, z, z) + kron(z, id, z);
}

PureState3Q PureState3Q::basis(int index) {
  if (index < 0 || index > 7) throw ValidationError("basis index out of range");
  Vec8 v = Vec8::Zero();
  v(index) = 1.0;
  return PureState3Q(v);
}

PureState3Q PureState3Q::product(const Vec2& a, const Vec2& b, const Vec2& c) {
  return PureState3Q(kron(a, b, c));
}

PureState3Q PureState3Q::normalized() const {
  double n = amp_.norm();
  if (n == 0) throw ValidationError("cannot normalize the zero state");
  return PureState3Q(amp_ / n);
}

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

SymmetricState::SymmetricState(const Vec4& coords, SectorBasis basis) : c_(coords) {
  if (basis == SectorBasis::orthonormal) {
    c_(1) /= kSqrt3;
    c_(2) /= kSqrt3;
  }
}

Vec4 SymmetricState::coords(SectorBasis basis) const {
  Vec4 v = c_;
  if (basis == SectorBasis::orthonormal) {
    v(1) *= kSqrt3;
    v(2) *= kSqrt3;
  }
  return v;
}

double SymmetricState::norm() const { return coords(SectorBasis::orthonormal).norm(); }

SymmetricState SymmetricState::normalized() const {
  double n = norm();
  if (n == 0) throw ValidationError("cannot normalize the zero state");
  return SymmetricState(c_ / n);
}

Mat8 qubit_permutation(const std::array<int, 3>& perm) {
  std::array<int, 3> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) throw ValidationError("not a permutation of {0,1,2}");
  Mat8 p = Mat8::Zero();
  for (int idx = 0; idx < 8; ++idx) {
    int bits[3] = {(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
    int target = 0;
    for (int k = 0; k < 3; ++k) target |= bits[k] << (2 - perm[k]);
    p(target, idx) = 1.0;
  }
  return p;
}

PureState3Q symmetrize(const PureState3Q& psi) {
  std::array<int, 3> perm{0, 1, 2};
  Vec8 acc = Vec8::Zero();
  do {
    acc += qubit_permutation(perm) * psi.amplitudes();
  } while (std::next_permutation(perm.begin(), perm.end()));
  return PureState3Q(acc / 6.0);
}

PureState3Q embed(const SymmetricState& s) {
  Vec8 v;
  v << s.c(0), s.c(1), s.c(1), s.c(2), s.c(1), s.c(2), s.c(2), s.c(3);
  return PureState3Q(v);
}

SectorProjection project_symmetric(const PureState3Q& psi) {
  const Vec8& t = psi.amplitudes();
  SymmetricState s(t(0), (t(1) + t(2) + t(4)) / 3.0, (t(3) + t(5) + t(6)) / 3.0, t(7));
  double residual = (t - embed(s).amplitudes()).norm();
  return {s, residual};
}

Mat8 local_symmetric(const Mat2& x) {
  if (!x.allFinite() || unitary_defect(x) > 1e-10)
    throw ValidationError("local_symmetric: X is not unitary");
  return kron(x, x, x);
}

}  // namespace symsector
