#include "symsector/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "symsector/control.hpp"
#include "symsector/decomposition.hpp"
#include "symsector/entanglement.hpp"
#include "symsector/io.hpp"
#include "symsector/majorana.hpp"
#include "symsector/qmat.hpp"
#include "symsector/subspace2.hpp"
#include "symsector/symdyn.hpp"

namespace symsector {

namespace {

std::uint64_t seed_from_env() {
  const char* s = std::getenv("SYMSECTOR_SEED");
  if (!s || !*s) return kDefaultSeed;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(std::string("SYMSECTOR_SEED is not an unsigned integer: ") + s);
  }
}

json coefficients_json(const SectorCoefficients& x) {
  return {{"x2", complex_to_json(x.x2)}, {"x3", complex_to_json(x.x3)}, {"x4", complex_to_json(x.x4)},
          {"x5", complex_to_json(x.x5)}, {"x6", complex_to_json(x.x6)}, {"x7", complex_to_json(x.x7)}};
}

json vector_json(const Vec8& v) {
  json out = json::array();
  for (int i = 0; i < 8; ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

int rank_of(const Mat8& p) { return static_cast<int>(std::lround(p.trace().real())); }

json cmd_decompose(double a, double b, double c, const std::string& state_path) {
  DecompositionParams p(a, b, c);
  json out;
  out["params"] = {{"a", a}, {"b", b}, {"c", c}};
  out["lambda"] = p.lambda();
  out["x"] = coefficients_json(sector_coefficients(p));
  out["y"] = coefficients_json(sector_coefficients(p.flipped()));
  const Projectors pi = projectors(p);
  out["ranks"] = {rank_of(pi.pi1), rank_of(pi.pi2), rank_of(pi.pi3)};
  try {
    const V1Analysis v1 = analyze_v1(p), v2 = analyze_v2(p);
    out["v1_tangles"] = {{"tau", v1.tau}, {"tau_AB", v1.tau_ab}, {"tau_A_BC", v1.tau_a_bc}};
    out["v2_tangles"] = {{"tau", v2.tau}, {"tau_AB", v2.tau_ab}, {"tau_A_BC", v2.tau_a_bc}};
  } catch (const ValidationError& e) {
    out["basis_warning"] = e.what();
  }
  if (!state_path.empty()) {
    const StateFile s = state_from_json(read_json_file(state_path));
    const StateComponents parts = decompose_state(s.full, p);
    out["components"] = {{"w", vector_json(parts.w)}, {"v1", vector_json(parts.v1)}, {"v2", vector_json(parts.v2)}};
    out["norms"] = {{"w", parts.w.norm()}, {"v1", parts.v1.norm()}, {"v2", parts.v2.norm()}};
  }
  return out;
}

json cmd_tangle(const std::string& path) {
  const StateFile s = state_from_json(read_json_file(path));
  json out;
  const EntanglementReport general = entanglement_report(s.full);
  out["report"] = report_to_json(general);
  const SectorProjection proj = project_symmetric(s.full);
  out["symmetric_residual"] = proj.residual_norm;
  if (proj.residual_norm < 1e-8) {
    const EntanglementReport fast = symmetric_report(proj.state.normalized());
    out["symmetric_report"] = report_to_json(fast);
    out["cross_check"] = std::max({std::abs(fast.tau - general.tau), std::abs(fast.tau_ab - general.tau_ab),
                                   std::abs(fast.tau_a_bc - general.tau_a_bc)});
  }
  return out;
}

json slots_json(const std::array<double, 10>& t) {
  json out = json::array();
  for (int s = 0; s < 10; ++s)
    out.push_back({{"factor", std::string(factor_name(kKSlots[s]))},
                   {"angle", t[s]},
                   {"entangling", changes_entanglement(kKSlots[s])}});
  return out;
}

json cmd_factorize(const std::string& path, std::uint64_t seed) {
  const Mat4 u = unitary_from_json(read_json_file(path));
  if (unitary_defect(u) > 1e-10) throw ValidationError("matrix is not unitary");
  const FactoredEvolution f = factorize_full(u, seed);
  json out;
  out["seed"] = seed;
  out["k1"] = slots_json(f.k1);
  out["a"] = {{"phase", {{"angle", f.z}, {"entangling", false}}}, {"hzz", {{"angle", f.w}, {"entangling", true}}}};
  out["z"] = f.z;
  out["w"] = f.w;
  out["k2"] = slots_json(f.k2);
  out["fidelity"] = f.fidelity;
  out["gauge_attempts"] = f.gauge_attempts;
  return out;
}

json cmd_simulate(const std::string& schedule_path, const std::string& state_path, const std::string& csv_path,
                  int samples) {
  const PulseSchedule sched = schedule_from_json(read_json_file(schedule_path));
  const StateFile s = state_from_json(read_json_file(state_path));
  const Trajectory t = propagate(sched, s.full, samples);
  std::ofstream csv(csv_path);
  if (!csv) throw ValidationError("cannot write " + csv_path);
  write_trajectory_csv(csv, t);
  if (!csv) throw ValidationError("failed writing " + csv_path);
  json out;
  out["samples"] = t.times.size();
  out["duration"] = sched.duration();
  out["final_state"] = state_to_json(t.states.back());
  out["final_report"] = report_to_json(t.reports.back());
  out["norm_drift"] = std::abs(t.states.back().norm() - 1);
  return out;
}

json cmd_majorana(const std::string& path, bool canonical) {
  const StateFile f = state_from_json(read_json_file(path));
  SymmetricState s = f.sector;
  if (!f.symmetric) {
    const SectorProjection proj = project_symmetric(f.full);
    if (proj.residual_norm >= 1e-8)
      throw ValidationError("state is not symmetric (residual " + std::to_string(proj.residual_norm) + ")");
    s = proj.state;
  }
  json out;
  json roots = json::array(), bloch = json::array();
  for (const ProjectiveQubit& q : majorana_roots(s)) {
    roots.push_back({complex_to_json(q.alpha), complex_to_json(q.beta)});
    const Eigen::Vector3d b = q.bloch();
    bloch.push_back({b.x(), b.y(), b.z()});
  }
  out["roots"] = roots;
  out["bloch_vectors"] = bloch;
  const auto angles = bloch_angles(s);
  out["angles"] = {angles[0], angles[1], angles[2]};
  if (canonical) {
    const CanonicalForm c = canonical_form(s);
    out["canonical"] = state_to_json(c.state);
    out["local_unitary"] = matrix_to_json(c.x);
  }
  return out;
}

json cmd_entangler(const std::string& path, double amplitude) {
  const StateFile f = state_from_json(read_json_file(path));
  const SectorProjection proj = project_symmetric(f.full);
  if (proj.residual_norm >= 1e-8) throw ValidationError("state is not symmetric");
  return schedule_to_json(perfect_entangler_schedule(proj.state, amplitude));
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation-symmetric three-qubit toolkit"};
  app.require_subcommand(1);

  double a = 0, b = 0, c = 0, amplitude = 1e3;
  int samples = 1;
  std::string state, unitary, schedule, csv;
  bool canonical = false;

  auto* decompose = app.add_subcommand("decompose", "invariant subspaces for parameters (a, b, c)");
  decompose->add_option("--a", a)->required();
  decompose->add_option("--b", b)->required();
  decompose->add_option("--c", c)->required();
  decompose->add_option("--state", state, "split this state into W, V1, V2");

  auto* tangle = app.add_subcommand("tangle", "entanglement report of a state");
  tangle->add_option("--state", state)->required();

  auto* factorize = app.add_subcommand("factorize", "Cartan factorization of a 4x4 symmetric-sector unitary");
  factorize->add_option("--unitary", unitary)->required();

  auto* simulate = app.add_subcommand("simulate", "propagate a state under a pulse schedule");
  simulate->add_option("--schedule", schedule)->required();
  simulate->add_option("--state", state)->required();
  simulate->add_option("--out", csv)->required();
  simulate->add_option("--samples", samples, "samples per segment")->check(CLI::PositiveNumber);

  auto* majorana = app.add_subcommand("majorana", "Majorana roots and Bloch angles");
  majorana->add_option("--state", state)->required();
  majorana->add_flag("--canonical", canonical, "also report the canonical form");

  auto* canon = app.add_subcommand("canonical", "same as majorana --canonical");
  canon->add_option("--state", state)->required();

  auto* entangler = app.add_subcommand("entangler", "perfect-entangler schedule for a product state");
  entangler->add_option("--state", state)->required();
  entangler->add_option("--amplitude", amplitude, "hard-pulse amplitude")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    const std::uint64_t seed = seed_from_env();
    json result;
    if (decompose->parsed()) result = cmd_decompose(a, b, c, state);
    else if (tangle->parsed()) result = cmd_tangle(state);
    else if (factorize->parsed()) result = cmd_factorize(unitary, seed);
    else if (simulate->parsed()) result = cmd_simulate(schedule, state, csv, samples);
    else if (majorana->parsed()) result = cmd_majorana(state, canonical);
    else if (canon->parsed()) result = cmd_majorana(state, true);
    else if (entangler->parsed()) result = cmd_entangler(state, amplitude);
    out << result.dump(2) << '\n';
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const json::exception& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace symsector
