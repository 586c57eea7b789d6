#pragma once

#include <vector>

#include "symsector/entanglement.hpp"
#include "symsector/states.hpp"

namespace symsector {

// Piecewise-constant controls for H = Hzz + ux Hx + uy Hy + uz Hz; time in units of the
// Ising coupling.
struct Segment {
  double dt = 0;
  double ux = 0, uy = 0, uz = 0;
};
struct PulseSchedule {
  std::vector<Segment> segments;
  double duration() const;
};
void validate(const PulseSchedule& schedule);

struct Trajectory {
  std::vector<double> times;
  std::vector<PureState3Q> states;
  std::vector<EntanglementReport> reports;
};

// Exact propagation psi <- e^{-i H dt} psi per segment; samples at t = 0 and at
// samples_per_segment equally spaced points inside each segment (its end included).
Trajectory propagate(const PulseSchedule& schedule, const PureState3Q& psi0, int samples_per_segment = 1);

// (|0> + |1>)^{(x)3} / (2 sqrt2)
PureState3Q prepared_state();

// Three-tangle of e^{-i Hzz t} prepared_state() in closed form.
double tau_free_evolution(double t);

// A hard pulse of the given amplitude rotating phi to |+> on every qubit, then free
// evolution for pi/4. psi0 must be phi (x) phi (x) phi.
PulseSchedule perfect_entangler_schedule(const SymmetricState& psi0, double amplitude = 1e3);

}  // namespace symsector
