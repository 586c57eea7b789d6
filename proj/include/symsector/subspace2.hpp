#pragma once

#include <vector>

#include "symsector/decomposition.hpp"
#include "symsector/types.hpp"

namespace symsector {

// Which quotient defines k. The generic formula x2/x7 fails where x7 = 0.
enum class KBranch { generic, x6_zero, x7_zero };

struct V1Analysis {
  cplx k;  // H_x v1 = -k w1
  KBranch branch = KBranch::generic;
  double tau = 0;
  double tau_a_bc = 0, tau_ab = 0, tau_ac = 0;
  cplx mu;  // x5 conj(x3) on the unit-normalized v1
};

// Entanglement of V1, computed on the unit-normalized v1. V2 is the same analysis at -p.
V1Analysis analyze_v1(const DecompositionParams& p);
V1Analysis analyze_v2(const DecompositionParams& p);

struct Su2ActionResiduals {
  double hz_v1, hz_w1, hx_v1, hx_w1, hx2_v1;
  double max() const;
};
Su2ActionResiduals su2_action_check(const DecompositionParams& p);

struct LocalStep {
  enum class Axis { z, x } axis;  // exp(angle * iH_z) or exp(angle * (-iH_x))
  double angle;
};

// Local symmetric rotations taking start to target inside V1, in application order.
std::vector<LocalStep> local_transitivity_demo(const DecompositionParams& p, const Vec8& start,
                                               const Vec8& target);
Mat8 local_step_unitary(const LocalStep& step);
Mat8 compose_steps(const std::vector<LocalStep>& steps);

}  // namespace symsector
