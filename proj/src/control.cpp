#include "symsector/control.hpp"

#include <cmath>

#include "symsector/qmat.hpp"

namespace symsector {

double PulseSchedule::duration() const {
  double t = 0;
  for (const Segment& s : segments) t += s.dt;
  return t;
}

void validate(const PulseSchedule& schedule) {
  for (const Segment& s : schedule.segments) {
    if (!std::isfinite(s.dt) || !(s.dt > 0)) throw ValidationError("schedule: segment durations must be positive");
    if (!std::isfinite(s.ux) || !std::isfinite(s.uy) || !std::isfinite(s.uz))
      throw ValidationError("schedule: control amplitudes must be finite");
  }
}

Trajectory propagate(const PulseSchedule& schedule, const PureState3Q& psi0, int samples_per_segment) {
  validate(schedule);
  if (samples_per_segment < 1) throw ValidationError("propagate: need at least one sample per segment");
  if (!psi0.amplitudes().allFinite() || std::abs(psi0.norm() - 1) > 1e-8)
    throw ValidationError("propagate: initial state is not normalized");

  static const Mat8 hzz = h_zz(), hx = h_x(), hy = h_y(), hz = h_z();
  Trajectory out;
  double t = 0;
  Vec8 psi = psi0.amplitudes();
  auto record = [&] {
    out.times.push_back(t);
    out.states.emplace_back(psi);
    out.reports.push_back(entanglement_report(out.states.back().normalized()));
  };
  record();
  for (const Segment& s : schedule.segments) {
    const Mat8 h = hzz + s.ux * hx + s.uy * hy + s.uz * hz;
    const double step = s.dt / samples_per_segment;
    const Mat8 u = expm_skew(Mat8(-I1 * h), step);
    const double t0 = t;
    for (int k = 1; k <= samples_per_segment; ++k) {
      psi = u * psi;
      t = t0 + s.dt * k / samples_per_segment;
      record();
    }
  }
  return out;
}

PureState3Q prepared_state() {
  const Vec2 plus = Vec2(1, 1) / std::sqrt(2.0);
  return PureState3Q::product(plus, plus, plus);
}

double tau_free_evolution(double t) {
  const cplx d = std::exp(6.0 * I1 * t) - std::exp(-2.0 * I1 * t);
  const double s = std::sin(2 * t);
  return std::abs(d * d + 16 * s * s) / 16.0;
}

PulseSchedule perfect_entangler_schedule(const SymmetricState& psi0, double amplitude) {
  if (!std::isfinite(amplitude) || !(amplitude > 0)) throw ValidationError("perfect_entangler_schedule: amplitude must be positive");
  const SeparabilityResult sep = is_separable_symmetric(psi0.normalized());
  if (!sep.separable) throw ValidationError("perfect_entangler_schedule: state is not a product phi x phi x phi");

  const Vec2 phi = sep.factor.normalized();
  const cplx ab = std::conj(phi(0)) * phi(1);
  const Eigen::Vector3d b(2 * ab.real(), 2 * ab.imag(), std::norm(phi(0)) - std::norm(phi(1)));
  const Eigen::Vector3d target(1, 0, 0);

  PulseSchedule out;
  const double gamma = std::atan2(b.cross(target).norm(), b.dot(target));
  if (gamma > 1e-12) {
    Eigen::Vector3d m = b.cross(target);
    if (m.norm() < 1e-9) m = Eigen::Vector3d(0, 0, 1);  // antipodal: any axis normal to x
    m.normalize();
    // per qubit the pulse is exp(-i dt (ux sx + uy sy + uz sz)) with sy = -sigma_y(textbook),
    // a rotation by 2 |u| dt about (ux, -uy, uz)
    out.segments.push_back({gamma / (2 * amplitude), amplitude * m.x(), -amplitude * m.y(), amplitude * m.z()});
  }
  out.segments.push_back({M_PI / 4, 0, 0, 0});
  return out;
}

}  // namespace symsector
