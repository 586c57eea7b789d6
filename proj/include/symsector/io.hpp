#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "symsector/control.hpp"
#include "symsector/states.hpp"
#include "symsector/types.hpp"

namespace symsector {

using nlohmann::json;

// {"kind": "full" | "symmetric", "amplitudes": [[re, im], ...], "normalized": bool}.
// Symmetric amplitudes are the orthonormal coordinates (c0, sqrt3 c1, sqrt3 c2, c3).
struct StateFile {
  bool symmetric = false;
  PureState3Q full;        // always set; the embedding when symmetric
  SymmetricState sector;   // set when symmetric
};
StateFile state_from_json(const json& j);
json state_to_json(const PureState3Q& psi);
json state_to_json(const SymmetricState& s);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

// {"dim": 4, "rows": [[[re, im] x 4] x 4]}
Mat4 unitary_from_json(const json& j);
json matrix_to_json(const CMatrix& m);

// {"segments": [{"dt", "ux", "uy", "uz"}]}
PulseSchedule schedule_from_json(const json& j);
json schedule_to_json(const PulseSchedule& s);

json report_to_json(const EntanglementReport& r);

json read_json_file(const std::string& path);

// t, re/im of the 8 amplitudes, tau, tau_AB, tau_AC, tau_BC, tau_A_BC
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

}  // namespace symsector
