#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "symsector/types.hpp"

namespace symsector {

// Symmetric-sector generators in the orthonormal basis (phi0, phi1/sqrt3, phi2/sqrt3, phi3).
struct Generators {
  Mat4 sx, sy, sz;  // (i/2) H_x, (i/2) H_y, (i/2) H_z restricted
  Mat4 hzz4;        // H_zz restricted, diag(3, -1, -1, 3)
  Mat4 j;           // symplectic form; also a generator of the compact part
  Mat4 r;
  Mat4 h;           // diag(0, i/2, -i/2, 0)
};
const Generators& generators();

// Images of X = i sigma_x / 2, Y = i sigma_y / 2, Z = i sigma_z / 2 under u(2) -> L, with
// i 1 -> J. The map extends to an algebra isomorphism M2(C) -> span{1, J, 2Jx, ...}.
struct LieImages {
  RMat4 jx, jy, jz;
};
const LieImages& lie_images();

Mat2 to_u2(const Mat4& l);
Mat4 from_u2(const Mat2& u);

bool is_in_S(const Mat4& f, double tol = 1e-10);
bool in_complement(const Mat4& f, double tol = 1e-10);  // F = J F^T J^-1
bool in_sp_group(const Mat4& k, double tol = 1e-9);     // unitary and K J K^T = J
bool in_l_group(const Mat4& l, double tol = 1e-9);      // real, orthogonal, symplectic

// Orthogonal projections of a skew-Hermitian matrix onto S and onto its complement.
Mat4 project_S(const Mat4& f);
Mat4 project_complement(const Mat4& f);

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct OuterKak {
  Mat4 k1;
  double z, w;  // A = e^{i z} e^{i Hzz4 w}
  Mat4 k2;
};
// U = K1 A K2 with K1, K2 in e^S. z in (-pi/4, pi/4], w in (-pi/2, pi/2].
OuterKak kak_outer(const Mat4& u, std::uint64_t seed = kDefaultSeed);
Mat4 a_factor(double z, double w);

struct InnerKak {
  Mat4 l1;
  double x, y;  // e^{Sz x} e^{H y}
  Mat4 l2;
};
// K = L1 e^{Sz x} e^{H y} L2 with L1, L2 real orthogonal symplectic.
InnerKak kak_inner(const Mat4& k);

struct EulerAngles {
  double t1 = 0, t2 = 0, t3 = 0, t4 = 0;
};
// L = e^{Sy t1} e^{R t2} e^{Sy t3} e^{J t4}. Not every L has this form (the rotation axes of
// Sy and R are not orthogonal); those throw NumericalError.
EulerAngles euler_L(const Mat4& l);
Mat4 euler_matrix(const EulerAngles& a);

enum class Factor { Sy, R, J, Sz, H, Phase, Hzz };
std::string_view factor_name(Factor f);
bool changes_entanglement(Factor f);
Mat4 factor_matrix(Factor f, double angle);

// Generator of each slot of a K = L1 Ahat L2 block, in product order.
inline constexpr std::array<Factor, 10> kKSlots{Factor::Sy, Factor::R,  Factor::Sy, Factor::J,
                                                Factor::Sz, Factor::H,  Factor::J,  Factor::Sy,
                                                Factor::R,  Factor::Sy};

struct FactoredEvolution {
  std::array<double, 10> k1{};
  double z = 0, w = 0;
  std::array<double, 10> k2{};
  double fidelity = 0;  // (|tr(U^dagger U_rebuilt)| / 4)^2
  int gauge_attempts = 0;
};
Mat4 k_matrix(const std::array<double, 10>& t);
Mat4 reassemble(const FactoredEvolution& f);
// Product of the factors that leave every entanglement measure unchanged, in order.
Mat4 preserving_part(const FactoredEvolution& f);

FactoredEvolution factorize_full(const Mat4& u, std::uint64_t seed = kDefaultSeed);

}  // namespace symsector
