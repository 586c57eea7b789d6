#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symsector/entanglement.hpp"
#include "symsector/majorana.hpp"
#include "symsector/qmat.hpp"
#include "symsector/states.hpp"
#include "testing.hpp"

using namespace symsector;
using testing_support::Rng;

namespace {

SymmetricState random_symmetric(Rng& rng) {
  return SymmetricState(rng.cvec<4>(), SectorBasis::orthonormal).normalized();
}

SymmetricState product_of(const Vec2& phi) {
  return SymmetricState(phi(0) * phi(0) * phi(0), phi(0) * phi(0) * phi(1), phi(0) * phi(1) * phi(1),
                        phi(1) * phi(1) * phi(1))
      .normalized();
}

double state_fidelity(const SymmetricState& a, const SymmetricState& b) {
  return fidelity(a.coords(SectorBasis::orthonormal), b.coords(SectorBasis::orthonormal));
}

MajoranaTriple triple_of(std::initializer_list<Vec2> vs) {
  MajoranaTriple t;
  int k = 0;
  for (const Vec2& v : vs) t[k++] = {v(0), v(1)};
  return t;
}

}  // namespace

TEST_CASE("roots of the basic states") {
  MajoranaTriple zero = majorana_roots(SymmetricState(1, 0, 0, 0));
  CHECK(triple_fidelity(zero, triple_of({Vec2(1, 0), Vec2(1, 0), Vec2(1, 0)})) > 1 - 1e-15);

  MajoranaTriple w = majorana_roots(SymmetricState(0, 1 / std::sqrt(3.0), 0, 0));
  CHECK(triple_fidelity(w, triple_of({Vec2(1, 0), Vec2(1, 0), Vec2(0, 1)})) > 1 - 1e-15);

  // p = (x^3 + 1) / sqrt2; roots are the cube roots of -1
  MajoranaTriple ghz = majorana_roots(SymmetricState(1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)));
  MajoranaTriple expect;
  for (int k = 0; k < 3; ++k) {
    cplx x = std::polar(1.0, M_PI / 3 + 2 * M_PI * k / 3);
    CHECK(std::abs(x * x * x + 1.0) < 1e-14);
    expect[k] = {1.0, -x};
  }
  CHECK(triple_fidelity(ghz, expect) > 1 - 1e-14);
  CHECK_THROWS_AS(majorana_roots(SymmetricState(0, 0, 0, 0)), ValidationError);
}

TEST_CASE("reconstruct is the symmetrized product") {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    Vec2 a = rng.cvec<2>(), b = rng.cvec<2>(), c = rng.cvec<2>();
    SymmetricState s = reconstruct(triple_of({a, b, c}));
    PureState3Q sym = symmetrize(PureState3Q::product(a, b, c));
    CHECK(fidelity(embed(s).amplitudes(), sym.amplitudes()) > 1 - 1e-13);
    CHECK(std::abs(s.norm() - 1) < 1e-13);
  }
  CHECK(state_fidelity(reconstruct(triple_of({Vec2(1, 0), Vec2(1, 0), Vec2(0, 1)})),
                       SymmetricState(0, 1, 0, 0)) > 1 - 1e-15);
}

TEST_CASE("round trip on random states") {
  Rng rng(52);
  for (int trial = 0; trial < 1000; ++trial) {
    SymmetricState s = random_symmetric(rng);
    MajoranaTriple t = majorana_roots(s);
    CHECK(state_fidelity(reconstruct(t), s) > 1 - 1e-8);
    CHECK(triple_fidelity(majorana_roots(reconstruct(t)), t) > 1 - 1e-8);
  }
}

TEST_CASE("round trip near repeated roots") {
  Rng rng(53);
  for (double delta : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    for (int trial = 0; trial < 50; ++trial) {
      Vec2 phi = rng.cvec<2>().normalized();
      Vec2 d1 = rng.cvec<2>(), d2 = rng.cvec<2>();
      // a near-triple and a near-double configuration
      for (const MajoranaTriple& t : {triple_of({phi, Vec2(phi + delta * d1), Vec2(phi + delta * d2)}),
                                      triple_of({phi, Vec2(phi + delta * d1), d2})}) {
        SymmetricState s = reconstruct(t);
        MajoranaTriple r = majorana_roots(s);
        CHECK(state_fidelity(reconstruct(r), s) > 1 - 1e-8);
        CHECK(triple_fidelity(majorana_roots(reconstruct(r)), r) > 1 - 1e-8);
        CHECK(triple_fidelity(r, t) > 1 - 1e-8);
      }
    }
  }
}

TEST_CASE("Bloch angles") {
  Rng rng(54);
  for (int trial = 0; trial < 1000; ++trial) {
    auto ang = bloch_angles(product_of(rng.cvec<2>()));
    CHECK(ang[2] < 1e-6);
  }
  for (const Vec2& phi : {Vec2(1, 0), Vec2(0, 1), Vec2(1, 1), Vec2(1e-9, 1)}) CHECK(bloch_angles(product_of(phi))[2] < 1e-6);

  auto ghz = bloch_angles(SymmetricState(1, 0, 0, 1));
  for (double a : ghz) CHECK(std::abs(a - 2 * M_PI / 3) < 1e-12);
  auto w = bloch_angles(SymmetricState(0, 1, 0, 0));
  CHECK(std::abs(w[0]) < 1e-12);
  CHECK(std::abs(w[1] - M_PI) < 1e-12);
  CHECK(std::abs(w[2] - M_PI) < 1e-12);

  for (int trial = 0; trial < 300; ++trial) {
    SymmetricState s = random_symmetric(rng);
    Mat2 x = rng.unitary<2>();
    SymmetricState moved = project_symmetric(PureState3Q(local_symmetric(x) * embed(s).amplitudes())).state;
    auto a = bloch_angles(s), b = bloch_angles(moved);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-7);
  }
}

TEST_CASE("canonical form") {
  Rng rng(55);
  std::vector<SymmetricState> cases{SymmetricState(1, 0, 0, 0), SymmetricState(0, 0, 0, 1),
                                    SymmetricState(1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)),
                                    SymmetricState(0, 1 / std::sqrt(3.0), 0, 0)};
  for (int trial = 0; trial < 300; ++trial) cases.push_back(random_symmetric(rng));
  for (const SymmetricState& s : cases) {
    CanonicalForm f = canonical_form(s);
    CHECK(unitary_defect(f.x) < 1e-12);
    CHECK(std::abs(f.state.c(3)) < 1e-9);
    CHECK(std::abs(f.state.c(0).imag()) < 1e-9);
    CHECK(std::abs(f.state.c(2).imag()) < 1e-9);
    CHECK(f.state.c(0).real() > -1e-9);
    CHECK(f.state.c(2).real() > -1e-9);
    CHECK((local_symmetric(f.x) * embed(s).amplitudes() - embed(f.state).amplitudes()).norm() < 1e-9);
    EntanglementReport a = symmetric_report(s.normalized()), b = symmetric_report(f.state.normalized());
    CHECK(std::abs(a.tau - b.tau) < 1e-9);
    CHECK(std::abs(a.tau_ab - b.tau_ab) < 1e-9);
  }
  CanonicalForm zero = canonical_form(SymmetricState(1, 0, 0, 0));
  CHECK((zero.x - Mat2::Identity()).norm() < 1e-15);
}

TEST_CASE("three separability criteria agree") {
  Rng rng(56);
  for (int trial = 0; trial < 400; ++trial) {
    SymmetricState s = trial % 2 ? product_of(rng.cvec<2>()) : random_symmetric(rng);
    const bool by_x = is_separable_symmetric(s).separable;
    const bool by_angles = bloch_angles(s)[2] < 1e-6;
    const bool by_tangle = symmetric_report(s).tau_a_bc < 1e-9;
    CHECK(by_x == by_angles);
    CHECK(by_x == by_tangle);
    CHECK(by_x == (trial % 2 == 1));
  }
}
