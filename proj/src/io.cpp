#include "symsector/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace symsector {

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite number");
  return v;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("complex number must be [re, im]");
  return {number(j[0], "re"), number(j[1], "im")};
}

StateFile state_from_json(const json& j) {
  const std::string kind = field(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
  if (kind != "full" && kind != "symmetric") throw ValidationError("state kind must be \"full\" or \"symmetric\"");
  const json& amps = field(j, "amplitudes");
  const std::size_t n = kind == "full" ? 8 : 4;
  if (!amps.is_array() || amps.size() != n)
    throw ValidationError("state \"" + kind + "\" needs " + std::to_string(n) + " amplitudes");
  CVector v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = complex_from_json(amps[i]);

  bool enforce = true;
  if (j.contains("normalized")) {
    if (!j.at("normalized").is_boolean()) throw ValidationError("\"normalized\" must be a boolean");
    enforce = j.at("normalized").get<bool>();
  }
  if (v.norm() == 0) throw ValidationError("state is the zero vector");
  if (enforce && std::abs(v.norm() - 1) > 1e-8) throw ValidationError("state is not normalized");
  v.normalize();

  StateFile out;
  out.symmetric = kind == "symmetric";
  if (out.symmetric) {
    out.sector = SymmetricState(Vec4(v), SectorBasis::orthonormal);
    out.full = embed(out.sector);
  } else {
    out.full = PureState3Q(Vec8(v));
  }
  return out;
}

json state_to_json(const PureState3Q& psi) {
  json amps = json::array();
  for (int i = 0; i < 8; ++i) amps.push_back(complex_to_json(psi[i]));
  return {{"kind", "full"}, {"amplitudes", amps}};
}

json state_to_json(const SymmetricState& s) {
  json amps = json::array();
  Vec4 c = s.coords(SectorBasis::orthonormal);
  for (int i = 0; i < 4; ++i) amps.push_back(complex_to_json(c(i)));
  return {{"kind", "symmetric"}, {"amplitudes", amps}};
}

Mat4 unitary_from_json(const json& j) {
  if (!field(j, "dim").is_number_integer() || j.at("dim").get<int>() != 4) throw ValidationError("unitary dim must be 4");
  const json& rows = field(j, "rows");
  if (!rows.is_array() || rows.size() != 4) throw ValidationError("unitary needs 4 rows");
  Mat4 u;
  for (int r = 0; r < 4; ++r) {
    if (!rows[r].is_array() || rows[r].size() != 4) throw ValidationError("unitary rows need 4 entries");
    for (int c = 0; c < 4; ++c) u(r, c) = complex_from_json(rows[r][c]);
  }
  return u;
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return {{"dim", m.rows()}, {"rows", rows}};
}

PulseSchedule schedule_from_json(const json& j) {
  const json& segs = field(j, "segments");
  if (!segs.is_array()) throw ValidationError("\"segments\" must be an array");
  PulseSchedule out;
  for (const json& s : segs) {
    Segment seg;
    seg.dt = number(field(s, "dt"), "dt");
    seg.ux = s.contains("ux") ? number(s.at("ux"), "ux") : 0.0;
    seg.uy = s.contains("uy") ? number(s.at("uy"), "uy") : 0.0;
    seg.uz = s.contains("uz") ? number(s.at("uz"), "uz") : 0.0;
    out.segments.push_back(seg);
  }
  validate(out);
  return out;
}

json schedule_to_json(const PulseSchedule& s) {
  json segs = json::array();
  for (const Segment& g : s.segments) segs.push_back({{"dt", g.dt}, {"ux", g.ux}, {"uy", g.uy}, {"uz", g.uz}});
  return {{"segments", segs}};
}

json report_to_json(const EntanglementReport& r) {
  return {{"tau", r.tau},       {"tau_AB", r.tau_ab},     {"tau_AC", r.tau_ac},
          {"tau_BC", r.tau_bc}, {"tau_A_BC", r.tau_a_bc}, {"separable", r.separable}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  static const char* labels[8] = {"000", "001", "010", "011", "100", "101", "110", "111"};
  out << "t";
  for (const char* l : labels) out << ",re_" << l << ",im_" << l;
  out << ",tau,tau_AB,tau_AC,tau_BC,tau_A_BC\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    out << t.times[k];
    for (int i = 0; i < 8; ++i) out << ',' << t.states[k][i].real() << ',' << t.states[k][i].imag();
    const EntanglementReport& r = t.reports[k];
    out << ',' << r.tau << ',' << r.tau_ab << ',' << r.tau_ac << ',' << r.tau_bc << ',' << r.tau_a_bc << '\n';
  }
}

}  // namespace symsector
