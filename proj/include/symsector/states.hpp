#pragma once

#include <array>

#include "symsector/types.hpp"

namespace symsector {

// Pauli matrices. sigma_y carries the sign used throughout the derivations,
// [[0, i], [-i, 0]], which is the negative of the common textbook choice.
Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();

// Collective fields sum_j sigma^(j) and the all-to-all Ising coupling.
Mat8 h_x();
Mat8 h_y();
Mat8 h_z();
Mat8 h_zz();

// e1..e8 = |000>..|111>, qubit A leftmost.
class PureState3Q {
 public:
  PureState3Q() : amp_(Vec8::Zero()) {}
  explicit PureState3Q(const Vec8& amplitudes) : amp_(amplitudes) {}

  static PureState3Q basis(int index);
  static PureState3Q product(const Vec2& a, const Vec2& b, const Vec2& c);

  const Vec8& amplitudes() const { return amp_; }
  cplx operator[](int i) const { return amp_(i); }
  double norm() const { return amp_.norm(); }
  PureState3Q normalized() const;
  Mat8 density() const { return amp_ * amp_.adjoint(); }

 private:
  Vec8 amp_;
};

// Coordinates of a symmetric-sector vector. earray: psi = sum c_k phi_k with phi_1, phi_2
// unnormalized (phi_1 = e2+e3+e5). orthonormal: (c0, sqrt3 c1, sqrt3 c2, c3).
enum class SectorBasis { earray, orthonormal };

class SymmetricState {
 public:
  SymmetricState() : c_(Vec4::Zero()) {}
  explicit SymmetricState(const Vec4& coords, SectorBasis basis = SectorBasis::earray);
  SymmetricState(cplx c0, cplx c1, cplx c2, cplx c3) : c_(c0, c1, c2, c3) {}

  Vec4 coords(SectorBasis basis = SectorBasis::earray) const;
  cplx c(int k) const { return c_(k); }
  // |c0|^2 + 3|c1|^2 + 3|c2|^2 + |c3|^2, square-rooted
  double norm() const;
  SymmetricState normalized() const;

 private:
  Vec4 c_;
};

PureState3Q symmetrize(const PureState3Q& psi);
PureState3Q embed(const SymmetricState& s);

struct SectorProjection {
  SymmetricState state;
  double residual_norm;
};
SectorProjection project_symmetric(const PureState3Q& psi);

Mat8 local_symmetric(const Mat2& x);

// Matrix sending |i_0 i_1 i_2> to the basis state whose qubit perm[k] holds i_k.
Mat8 qubit_permutation(const std::array<int, 3>& perm);

}  // namespace symsector
