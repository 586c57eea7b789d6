#pragma once

#include <array>
#include <vector>

#include "symsector/states.hpp"
#include "symsector/types.hpp"

namespace symsector {

// (a, b, c) != 0 selecting one decomposition W + V1 + V2.
class DecompositionParams {
 public:
  DecompositionParams(double a, double b, double c);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double lambda() const;  // 2 sqrt(3c^2 + 3cb + 3b^2 + 3a^2)
  DecompositionParams flipped() const { return {-a_, -b_, -c_}; }
  DecompositionParams normalized() const;

 private:
  double a_, b_, c_;
};

// i E1 .. i E5 (Hermitian), each commuting with H_x, H_y and H_zz.
std::array<Mat8, 5> commutant_basis();

struct CartanFamily {
  Mat8 f1, f2, f3;
  double lambda;
};
CartanFamily cartan_family(const DecompositionParams& p);

struct Projectors {
  Mat8 pi1, pi2, pi3;
};
Projectors projectors(const DecompositionParams& p);

// x2, x3, x5 weight |001>, |010>, |100>; x4, x6, x7 weight |011>, |101>, |110>.
struct SectorCoefficients {
  cplx x2, x3, x5, x4, x6, x7;
  Vec8 v() const;
  Vec8 w() const;
};
SectorCoefficients sector_coefficients(const DecompositionParams& p);

struct DecompositionBases {
  std::array<Vec8, 4> w_basis;  // e1, e2+e3+e5, e4+e6+e7, e8
  SectorCoefficients x;         // V1 = span{v1, w1}
  SectorCoefficients y;         // V2 = span{v2, w2}
  Vec8 v1, w1, v2, w2;          // unnormalized, as the coefficients give them
  Projectors pi;

  Vec8 v1_normalized() const { return v1.normalized(); }
  Vec8 w1_normalized() const { return w1.normalized(); }
  Vec8 v2_normalized() const { return v2.normalized(); }
  Vec8 w2_normalized() const { return w2.normalized(); }
};
// Throws ValidationError on the parameter rays where one of the sector basis vectors vanishes.
DecompositionBases subspace_bases(const DecompositionParams& p);

struct StateComponents {
  Vec8 w, v1, v2;
};
StateComponents decompose_state(const PureState3Q& psi, const DecompositionParams& p);

struct InvariantSplit {
  Eigen::MatrixXd m;          // joint eigenvalues, one row per input matrix
  Eigen::MatrixXd reduced;    // RREF(m)
  Eigen::MatrixXd transform;  // transform * m == reduced
  Eigen::Index rank = 0;
  bool rank_deficient = false;
  Eigen::Matrix<cplx, 8, 8> eigenvectors;  // columns ordered like the columns of m
  std::vector<Mat8> combinations;          // sum_k transform(j,k) F_k, one per pivot row
  std::vector<CMatrix> subspaces;          // orthonormal columns, eigenvalue 1 of each combination
};
// Simultaneous diagonalization, eigenvalue matrix, row reduction, eigenspace extraction.
InvariantSplit generic_invariant_split(const std::array<Mat8, 3>& cartan);

}  // namespace symsector
