#pragma once

#include <array>

#include <Eigen/Dense>

#include "symsector/states.hpp"
#include "symsector/types.hpp"

namespace symsector {

// Homogeneous single-qubit pair alpha|0> + beta|1>, defined up to scale.
struct ProjectiveQubit {
  cplx alpha = 1, beta = 0;
  Vec2 vector() const { return Vec2(alpha, beta); }
  Eigen::Vector3d bloch() const;
};

// Unordered; stored in a deterministic order.
using MajoranaTriple = std::array<ProjectiveQubit, 3>;

// Roots of c0 x^3 + 3 c1 x^2 + 3 c2 x + c3 as pairs (1, -x); missing degree gives (0, 1).
MajoranaTriple majorana_roots(const SymmetricState& s);
// Normalized symmetrized product of the three qubits.
SymmetricState reconstruct(const MajoranaTriple& t);

// |<a|b>|^2 for the normalized pairs.
double projective_fidelity(const ProjectiveQubit& a, const ProjectiveQubit& b);
// Smallest pairwise fidelity under the best matching of the two triples.
double triple_fidelity(const MajoranaTriple& a, const MajoranaTriple& b);

// Pairwise angles between the Bloch vectors of the roots, ascending.
std::array<double, 3> bloch_angles(const SymmetricState& s);

struct CanonicalForm {
  SymmetricState state;  // c3 = 0, c0 and c2 real and non-negative
  Mat2 x;                // X^{(x)3} embed(s) = embed(state)
};
CanonicalForm canonical_form(const SymmetricState& s);

}  // namespace symsector
