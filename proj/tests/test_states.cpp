#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symsector/qmat.hpp"
#include "symsector/states.hpp"
#include "testing.hpp"

using namespace symsector;
using testing_support::Rng;

namespace {

PureState3Q random_state(Rng& rng) { return PureState3Q(rng.cvec<8>()).normalized(); }

// all six permutation matrices, built independently from bit manipulation
std::vector<Mat8> all_permutations() {
  std::vector<Mat8> out;
  std::array<int, 3> p{0, 1, 2};
  do out.push_back(qubit_permutation(p));
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("Pauli conventions and collective fields") {
  CHECK((sigma_y() - (Mat2() << 0, I1, -I1, 0).finished()).norm() == 0.0);
  CHECK(hermitian_defect(h_x()) == 0.0);
  CHECK(hermitian_defect(h_y()) == 0.0);
  // H_zz on |000> is 3, on |001> is -1
  CHECK(h_zz()(0, 0) == cplx(3));
  CHECK(h_zz()(1, 1) == cplx(-1));
  CHECK((h_zz() - Mat8(h_zz().diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("qubit permutations") {
  // swapping A and B sends |100> (e5) to |010> (e3)
  Mat8 ab = qubit_permutation({1, 0, 2});
  CHECK((ab * PureState3Q::basis(4).amplitudes() - PureState3Q::basis(2).amplitudes()).norm() == 0.0);
  for (const Mat8& p : all_permutations()) CHECK(unitary_defect(p) == 0.0);
  CHECK_THROWS_AS(qubit_permutation({0, 0, 1}), ValidationError);
}

TEST_CASE("symmetrize examples") {
  CHECK((symmetrize(PureState3Q::basis(0)).amplitudes() - PureState3Q::basis(0).amplitudes()).norm() ==
        0.0);
  Vec8 expect = Vec8::Zero();
  expect(1) = expect(2) = expect(4) = 1.0 / 3.0;
  CHECK((symmetrize(PureState3Q::basis(4)).amplitudes() - expect).norm() < 1e-16);
}

TEST_CASE("symmetrized products have the expansion coefficients") {
  Rng rng(20);
  for (int trial = 0; trial < 10; ++trial) {
    Vec2 p1 = rng.cvec<2>(), p2 = rng.cvec<2>(), p3 = rng.cvec<2>();
    cplx a1 = p1(0), b1 = p1(1), a2 = p2(0), b2 = p2(1), a3 = p3(0), b3 = p3(1);
    SymmetricState uno(a1 * a2 * a3, (a1 * a2 * b3 + a1 * b2 * a3 + b1 * a2 * a3) / 3.0,
                       (a1 * b2 * b3 + b1 * a2 * b3 + b1 * b2 * a3) / 3.0, b1 * b2 * b3);
    Vec8 sym = symmetrize(PureState3Q::product(p1, p2, p3)).amplitudes();
    CHECK((sym - embed(uno).amplitudes()).norm() < 1e-13);
  }
}

TEST_CASE("symmetrize is idempotent and lands in the sector") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    PureState3Q psi = random_state(rng);
    PureState3Q s = symmetrize(psi);
    CHECK((symmetrize(s).amplitudes() - s.amplitudes()).norm() < 1e-14);
    CHECK(project_symmetric(s).residual_norm < 1e-14);
    for (const Mat8& p : all_permutations()) CHECK((p * s.amplitudes() - s.amplitudes()).norm() < 1e-14);
  }
}

TEST_CASE("embed examples") {
  CHECK((embed(SymmetricState(1, 0, 0, 0)).amplitudes() - PureState3Q::basis(0).amplitudes()).norm() == 0.0);
  Vec8 w = Vec8::Zero();
  w(1) = w(2) = w(4) = 1 / std::sqrt(3.0);
  SymmetricState ws(0, 1 / std::sqrt(3.0), 0, 0);
  CHECK((embed(ws).amplitudes() - w).norm() < 1e-16);
  CHECK(ws.norm() == doctest::Approx(1.0));

  double h = 1 / (2 * std::sqrt(2.0));
  Vec8 chosen = embed(SymmetricState(h, h, h, h)).amplitudes();
  Vec2 plus(1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
  CHECK((chosen - PureState3Q::product(plus, plus, plus).amplitudes()).norm() < 1e-15);
}

TEST_CASE("orthonormal coordinates") {
  SymmetricState s(Vec4(1, 2, 3, 4), SectorBasis::orthonormal);
  CHECK(std::abs(s.c(1) - 2 / std::sqrt(3.0)) < 1e-15);
  CHECK((s.coords(SectorBasis::orthonormal) - Vec4(1, 2, 3, 4)).norm() < 1e-15);
  CHECK(s.norm() == doctest::Approx(embed(s).norm()));
}

TEST_CASE("project_symmetric") {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    SymmetricState s(rng.cvec<4>());
    auto pr = project_symmetric(embed(s));
    CHECK((pr.state.coords() - s.coords()).norm() < 1e-14);
    CHECK(pr.residual_norm < 1e-14);
  }

  // Gram-matrix oracle: least squares against the four unnormalized basis vectors
  Vec8 psi = Vec8::Zero();
  psi(0) = psi(4) = 1 / std::sqrt(2.0);
  Eigen::Matrix<cplx, 8, 4> phi = Eigen::Matrix<cplx, 8, 4>::Zero();
  phi(0, 0) = 1;
  phi(1, 1) = phi(2, 1) = phi(4, 1) = 1;
  phi(3, 2) = phi(5, 2) = phi(6, 2) = 1;
  phi(7, 3) = 1;
  Mat4 gram = phi.adjoint() * phi;
  Vec4 coeff = gram.ldlt().solve(phi.adjoint() * psi);
  auto pr = project_symmetric(PureState3Q(psi));
  CHECK((pr.state.coords() - coeff).norm() < 1e-15);
  CHECK(std::abs(pr.state.c(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(pr.state.c(1) - 1 / (3 * std::sqrt(2.0))) < 1e-15);
  CHECK(pr.residual_norm == doctest::Approx((psi - phi * coeff).norm()));

  // a vector orthogonal to the sector projects to zero with full residual
  Vec8 v1 = Vec8::Zero();
  v1(1) = 2.0;
  v1(2) = -0.5;
  v1(4) = -1.5;
  auto pv = project_symmetric(PureState3Q(v1));
  CHECK(pv.state.coords().norm() < 1e-15);
  CHECK(pv.residual_norm == doctest::Approx(v1.norm()));
}

TEST_CASE("local_symmetric") {
  CHECK((local_symmetric(Mat2::Identity()) - Mat8::Identity()).norm() == 0.0);
  Mat8 flip = local_symmetric(sigma_x());
  for (int i = 0; i < 8; ++i) CHECK(flip(7 - i, i) == cplx(1));
  CHECK_THROWS_AS(local_symmetric((Mat2() << 1, 1, 0, 1).finished()), ValidationError);

  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Mat8 x3 = local_symmetric(rng.su2());
    SymmetricState s(rng.cvec<4>());
    CHECK(project_symmetric(PureState3Q(x3 * embed(s).amplitudes())).residual_norm < 1e-13);
    for (const Mat8& p : all_permutations()) CHECK((p * x3 - x3 * p).norm() < 1e-13);
  }
}

TEST_CASE("symmetrize commutes with local symmetric unitaries") {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    Mat8 x3 = local_symmetric(rng.unitary<2>());
    PureState3Q psi = random_state(rng);
    Vec8 lhs = symmetrize(PureState3Q(x3 * psi.amplitudes())).amplitudes();
    Vec8 rhs = x3 * symmetrize(psi).amplitudes();
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}
