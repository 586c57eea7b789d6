#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symsector/entanglement.hpp"
#include "symsector/qmat.hpp"
#include "symsector/states.hpp"
#include "symsector/symdyn.hpp"
#include "testing.hpp"

using namespace symsector;
using testing_support::Rng;

namespace {

// Orthonormal basis of the symmetric subspace: e1, (e2+e3+e5)/sqrt3, (e4+e6+e7)/sqrt3, e8.
Eigen::Matrix<cplx, 8, 4> sector_basis() {
  Eigen::Matrix<cplx, 8, 4> b = Eigen::Matrix<cplx, 8, 4>::Zero();
  const double r = 1 / std::sqrt(3.0);
  b(0, 0) = 1;
  b(1, 1) = b(2, 1) = b(4, 1) = r;
  b(3, 2) = b(5, 2) = b(6, 2) = r;
  b(7, 3) = 1;
  return b;
}

Mat4 restrict(const Mat8& h) {
  auto b = sector_basis();
  return b.adjoint() * h * b;
}

Mat4 random_sp(Rng& rng) { return expm_skew(project_S(rng.skew_hermitian<4>()), 1.0); }

Mat4 random_l(Rng& rng) {
  const Generators& g = generators();
  const LieImages& m = lie_images();
  Mat4 f = rng.normal() * g.j + (rng.normal() * m.jx + rng.normal() * m.jy + rng.normal() * m.jz).cast<cplx>();
  return expm_skew(f, 2.0);
}

}  // namespace

TEST_CASE("generators are the restricted collective fields") {
  const Generators& g = generators();
  CHECK((g.sx - 0.5 * I1 * restrict(h_x())).norm() < 1e-15);
  CHECK((g.sy - 0.5 * I1 * restrict(h_y())).norm() < 1e-15);
  CHECK((g.sz - 0.5 * I1 * restrict(h_z())).norm() < 1e-15);
  CHECK((g.hzz4 - restrict(h_zz())).norm() < 1e-15);
}

TEST_CASE("su(2) commutation relations") {
  const Generators& g = generators();
  auto br = [](const Mat4& a, const Mat4& b) { return Mat4(a * b - b * a); };
  CHECK((br(g.sx, g.sy) - g.sz).norm() < 1e-14);
  CHECK((br(g.sy, g.sz) - g.sx).norm() < 1e-14);
  CHECK((br(g.sz, g.sx) - g.sy).norm() < 1e-14);
  const LieImages& m = lie_images();
  auto rb = [](const RMat4& a, const RMat4& b) { return RMat4(a * b - b * a); };
  // i sigma / 2 satisfy [X, Y] = -Z with the textbook sigma_y; the images must agree
  Mat2 x = 0.5 * I1 * (Mat2() << 0, 1, 1, 0).finished(), y = 0.5 * (Mat2() << 0, 1, -1, 0).finished(),
       z = 0.5 * I1 * (Mat2() << 1, 0, 0, -1).finished();
  CHECK(((x * y - y * x) - (-z)).norm() < 1e-15);
  CHECK((rb(m.jx, m.jy) + m.jz).norm() < 1e-15);
  CHECK((rb(m.jy, m.jz) + m.jx).norm() < 1e-15);
  CHECK((rb(m.jz, m.jx) + m.jy).norm() < 1e-15);
}

TEST_CASE("membership in S, L and the complement") {
  const Generators& g = generators();
  for (const Mat4* f : {&g.sx, &g.sy, &g.sz, &g.j, &g.r, &g.h}) {
    CHECK(is_in_S(*f));
    CHECK(skew_defect(*f) < 1e-15);
  }
  CHECK(in_complement(Mat4(I1 * g.hzz4)));
  CHECK(in_complement(Mat4(I1 * Mat4::Identity())));
  CHECK(!is_in_S(Mat4(I1 * g.hzz4)));
  // Sy, R and J are real; Sx and Sz are not
  for (const Mat4* f : {&g.sy, &g.r, &g.j}) CHECK(f->imag().norm() == 0.0);
  CHECK((g.r.adjoint() * g.sy).trace().real() == doctest::Approx(0.0));
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    Mat4 f = rng.skew_hermitian<4>();
    Mat4 s = project_S(f), p = project_complement(f);
    CHECK((s + p - f).norm() < 1e-14);
    CHECK(is_in_S(s));
    CHECK(in_complement(p));
    CHECK(std::abs((s.adjoint() * p).trace()) < 1e-13);
    CHECK(in_sp_group(random_sp(rng)));
    CHECK(in_l_group(random_l(rng)));
  }
}

TEST_CASE("u(2) isomorphism extends to the group") {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    Mat4 a = random_l(rng), b = random_l(rng);
    Mat2 ua = to_u2(a), ub = to_u2(b);
    CHECK(unitary_defect(ua) < 1e-12);
    CHECK((to_u2(Mat4(a * b)) - ua * ub).norm() < 1e-12);
    CHECK((from_u2(ua) - a).norm() < 1e-12);
  }
  CHECK((to_u2(generators().j) - I1 * Mat2::Identity()).norm() < 1e-15);
}

TEST_CASE("outer factorization U = K1 A K2") {
  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    Mat4 u = rng.unitary<4>();
    OuterKak k = kak_outer(u);
    CHECK(in_sp_group(k.k1));
    CHECK(in_sp_group(k.k2));
    CHECK((k.k1 * a_factor(k.z, k.w) * k.k2 - u).norm() < 1e-9);
    CHECK(k.z > -M_PI / 4);
    CHECK(k.z <= M_PI / 4 + 1e-12);
    CHECK(k.w > -M_PI / 2);
    CHECK(k.w <= M_PI / 2 + 1e-12);
  }
  OuterKak ising = kak_outer(expm_skew(Mat4(I1 * generators().hzz4), M_PI / 4));
  CHECK(std::abs(ising.z) < 1e-12);
  CHECK(std::abs(ising.w - M_PI / 4) < 1e-12);
  CHECK((ising.k1 - Mat4::Identity()).norm() < 1e-9);
  CHECK((ising.k2 - Mat4::Identity()).norm() < 1e-9);
  OuterKak id = kak_outer(Mat4::Identity());
  CHECK(std::abs(id.z) < 1e-12);
  CHECK(std::abs(id.w) < 1e-12);
  CHECK_THROWS_AS(kak_outer(Mat4(2.0 * Mat4::Identity())), ValidationError);
}

TEST_CASE("inner factorization K = L1 Ahat L2") {
  Rng rng(44);
  const Generators& g = generators();
  for (int trial = 0; trial < 300; ++trial) {
    Mat4 k = random_sp(rng);
    InnerKak f = kak_inner(k);
    CHECK(in_l_group(f.l1));
    CHECK(in_l_group(f.l2));
    Mat4 ahat = expm_skew(g.sz, f.x) * expm_skew(g.h, f.y);
    CHECK((f.l1 * ahat * f.l2 - k).norm() < 1e-9);
  }
  CHECK_THROWS_AS(kak_inner(rng.unitary<4>()), ValidationError);
}

TEST_CASE("Euler form of e^L") {
  Rng rng(45);
  int reached = 0;
  const int n = 2000;
  for (int trial = 0; trial < n; ++trial) {
    Mat4 l = random_l(rng);
    try {
      EulerAngles e = euler_L(l);
      CHECK((euler_matrix(e) - l).norm() < 1e-9);
      ++reached;
    } catch (const NumericalError&) {
    }
  }
  // the Sy and R axes are not orthogonal, so part of the group is out of reach
  MESSAGE("Euler-reachable fraction: " << double(reached) / n);
  CHECK(reached > n / 2);
  CHECK(reached < n);
  // anything built from the template is reachable
  for (int trial = 0; trial < 200; ++trial) {
    EulerAngles e{rng.uniform(-M_PI, M_PI), rng.uniform(0, 1), rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI)};
    Mat4 l = euler_matrix(e);
    CHECK((euler_matrix(euler_L(l)) - l).norm() < 1e-9);
  }
  EulerAngles zero = euler_L(Mat4::Identity());
  CHECK(std::abs(zero.t1) + std::abs(zero.t2) + std::abs(zero.t3) + std::abs(zero.t4) < 1e-12);
}

TEST_CASE("full factorization round trip") {
  Rng rng(46);
  for (int trial = 0; trial < 200; ++trial) {
    Mat4 u = rng.unitary<4>();
    FactoredEvolution f = factorize_full(u);
    CHECK(f.fidelity > 1 - 1e-7);
    CHECK((reassemble(f) - u).norm() < 1e-8);
  }
  FactoredEvolution id = factorize_full(Mat4::Identity());
  double total = std::abs(id.z) + std::abs(id.w);
  for (double t : id.k1) total += std::abs(t);
  for (double t : id.k2) total += std::abs(t);
  CHECK(total < 1e-9);
  CHECK(id.fidelity == doctest::Approx(1.0));
  // deterministic for a fixed seed
  Mat4 u = rng.unitary<4>();
  FactoredEvolution a = factorize_full(u, 7), b = factorize_full(u, 7);
  CHECK(a.k1 == b.k1);
  CHECK(a.k2 == b.k2);
}

TEST_CASE("tagged factors") {
  CHECK(!changes_entanglement(Factor::Sy));
  CHECK(!changes_entanglement(Factor::Sz));
  CHECK(!changes_entanglement(Factor::Phase));
  for (Factor f : {Factor::R, Factor::J, Factor::H, Factor::Hzz}) CHECK(changes_entanglement(f));

  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    FactoredEvolution f = factorize_full(rng.unitary<4>());
    Mat4 keep = preserving_part(f);
    for (int s = 0; s < 5; ++s) {
      SymmetricState psi = SymmetricState(rng.cvec<4>(), SectorBasis::orthonormal).normalized();
      SymmetricState out(Vec4(keep * psi.coords(SectorBasis::orthonormal)), SectorBasis::orthonormal);
      EntanglementReport a = symmetric_report(psi), b = symmetric_report(out);
      CHECK(std::abs(a.tau - b.tau) < 1e-8);
      CHECK(std::abs(a.tau_ab - b.tau_ab) < 1e-8);
    }
  }
  // the entangling generators do change the tangle somewhere
  const Vec4 c = Vec4(0.5, cplx(0.3, 0.2), -0.4, cplx(0, 0.1)).normalized();
  const double tau0 = symmetric_report(SymmetricState(c, SectorBasis::orthonormal)).tau;
  for (Factor f : {Factor::R, Factor::J, Factor::H, Factor::Hzz}) {
    SymmetricState out(Vec4(factor_matrix(f, 0.3) * c), SectorBasis::orthonormal);
    CHECK(std::abs(symmetric_report(out).tau - tau0) > 1e-3);
  }
}
