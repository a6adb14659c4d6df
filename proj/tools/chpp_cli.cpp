// chpp: command-line front end for the complex Hadamard promise toolkit.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "chpp/census.hpp"
#include "chpp/errors.hpp"
#include "chpp/json_io.hpp"
#include "chpp/switch_sim.hpp"

using namespace chpp;
using chpp::io::json;

namespace {

struct Globals {
  double eps_phase = kDefaultEpsPhase;
  double eps_unitary = kDefaultEpsUnitary;
  double eps_det = kDefaultEpsDet;
  std::uint64_t seed = 1;
  std::string budget = std::to_string(kDefaultCensusBudget);
  int d_max = kDefaultButsonSearch;
  int n_max = kDefaultScsMaxN;
  unsigned threads = 0;
  bool json_tables = false;
  bool pretty = false;
};

Globals g;

void emit(const json& j) { std::cout << j.dump(g.pretty ? 2 : -1) << '\n'; }

void emit_to(const json& j, const std::string& out) {
  if (out.empty()) {
    emit(j);
  } else {
    io::write_text_file(out, j.dump(g.pretty ? 2 : -1) + "\n");
  }
}

std::uint64_t parse_budget(const std::string& text) {
  if (text == "unlimited") return UINT64_MAX;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--budget", "expected a count or 'unlimited'");
}

ExactTurn parse_turn(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return ExactTurn(std::stoll(text), 1);
    return ExactTurn(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("--a-turn", "expected NUM/DEN");
  }
}

CHMatrix load_matrix(const std::string& path) { return io::matrix_from_json(io::read_json_file(path)); }

PromiseInstance load_instance(const std::string& path) {
  const std::filesystem::path p(path);
  return io::instance_from_json(io::read_json_file(p), p.parent_path());
}

CensusOptions census_options(const std::string& engine) {
  CensusOptions opts;
  opts.seed = g.seed;
  opts.budget = parse_budget(g.budget);
  opts.threads = g.threads;
  opts.n_max = g.n_max;
  if (engine == "frontier") opts.engine = CensusEngine::Frontier;
  if (engine == "lattice") opts.engine = CensusEngine::Lattice;
  return opts;
}

void emit_rows(const std::vector<CensusRow>& rows, const std::string& out) {
  std::string csv = census_csv_header() + "\n";
  for (const auto& r : rows) csv += census_csv_row(r) + "\n";
  if (!out.empty()) io::write_text_file(out, csv);
  if (g.json_tables || g.pretty) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(io::to_json(r));
    emit(arr);
  } else {
    std::cout << csv;
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--a", "expected a comma-separated list of numbers");
    }
  }
  return out;
}

void add_matrix_commands(CLI::App& app) {
  auto* matrix = app.add_subcommand("matrix", "Generate and inspect complex Hadamard matrices");
  matrix->require_subcommand(1);

  auto* gen = matrix->add_subcommand("gen", "Generate a matrix from a named family");
  static std::string family, out, a_turn;
  static int d = 2, k = 1;
  static double a = 0.0;
  gen->add_option("--family", family, "fourier | sylvester | f4")
      ->required()
      ->check(CLI::IsMember({"fourier", "sylvester", "f4"}));
  gen->add_option("--d", d, "Fourier order");
  gen->add_option("--k", k, "Sylvester exponent (order 2^k)");
  auto* a_opt = gen->add_option("--a", a, "f4 parameter in radians, in [0, pi)");
  gen->add_option("--a-turn", a_turn, "f4 parameter as an exact fraction of a turn, e.g. 1/8")->excludes(a_opt);
  gen->add_option("--out", out, "Write to this file instead of stdout");
  gen->callback([] {
    CHMatrix m = family == "fourier"     ? fourier(d)
                 : family == "sylvester" ? sylvester_hadamard(k)
                 : a_turn.empty()        ? f4_family(a)
                                         : f4_family(parse_turn(a_turn));
    emit_to(io::to_json(m), out);
  });

  static std::string file;
  auto* validate = matrix->add_subcommand("validate", "Check M M^dag = p I");
  validate->add_option("file", file)->required();
  validate->callback([] { emit(io::to_json(validate_ch(load_matrix(file), g.eps_unitary))); });

  auto* classify = matrix->add_subcommand("classify", "Butson complexity or a non-root-of-unity witness");
  classify->add_option("file", file)->required();
  classify->callback([] { emit(io::to_json(classify_bh(load_matrix(file), g.d_max, g.eps_phase))); });

  static std::string dephase_out;
  auto* deph = matrix->add_subcommand("dephase", "Bring a matrix to dephased form");
  deph->add_option("file", file)->required();
  deph->add_option("--out", dephase_out, "Also write the dephased matrix to this file");
  deph->callback([] {
    const Dephasing result = dephase(load_matrix(file));
    if (!dephase_out.empty()) io::write_text_file(dephase_out, io::to_json(result.matrix).dump() + "\n");
    emit(io::to_json(result));
  });

  auto* mindim = matrix->add_subcommand("mindim", "Smallest qudit dimension able to host the promise");
  mindim->add_option("file", file)->required();
  mindim->callback([] {
    const auto dim = min_target_dimension(load_matrix(file), g.d_max, g.eps_phase);
    emit({{"min_dim", dim ? json(*dim) : json(nullptr)}});
  });
}

void add_promise_commands(CLI::App& app) {
  auto* promise = app.add_subcommand("promise", "Build and verify promise instances");
  promise->require_subcommand(1);

  auto* build = promise->add_subcommand("build", "Synthesize gates for one column");
  static std::string matrix_path, target = "qudit", out, gammas;
  static int column = 0;
  static std::optional<int> dim;
  static double alpha = 1.0;
  static std::optional<double> a;
  build->add_option("--matrix", matrix_path, "Matrix file");
  build->add_option("--column", column, "Promised column k")->required();
  build->add_option("--target", target, "qudit | cv | minimal")
      ->check(CLI::IsMember({"qudit", "cv", "minimal"}));
  build->add_option("--dim", dim, "Qudit dimension (multiple of the Butson complexity)");
  build->add_option("--alpha", alpha, "Displacement of the first gate (cv)");
  build->add_option("--gammas", gammas, "Comma-separated gamma_1..gamma_{p-1} (cv)");
  build->add_option("--a", a, "f4 parameter for the three-gate construction");
  build->add_option("--out", out, "Write the instance here instead of stdout");
  build->callback([] {
    PromiseInstance inst{fourier(1), shift_permutations(1, 1), {}, column};
    if (target == "minimal") {
      if (!a) throw CLI::RequiredError("--a");
      const CHMatrix f4 = f4_family(*a);
      if (!matrix_path.empty() && !load_matrix(matrix_path).approx_equal(f4, g.eps_phase)) {
        throw Error(ErrorCode::DomainError, "matrix is not f4_family(a)");
      }
      const MinimalCh4 built = build_minimal_ch4(*a, column, {}, g.eps_phase);
      inst.matrix = f4;
      inst.perm_set = built.perm_set;
      inst.gates.assign(built.gates.begin(), built.gates.end());
    } else {
      if (matrix_path.empty()) throw CLI::RequiredError("--matrix");
      BuildOptions opts;
      opts.dim = dim;
      opts.alpha = alpha;
      if (!gammas.empty()) opts.gammas = parse_list(gammas);
      opts.eps_phase = g.eps_phase;
      inst = build_instance(load_matrix(matrix_path), column,
                            target == "qudit" ? Target::Qudit : Target::Cv, opts);
    }
    emit_to(io::to_json(inst), out);
  });

  auto* verify = promise->add_subcommand("verify", "Find the column an instance's gates realize");
  static std::string instance;
  verify->add_option("--instance", instance, "Instance file")->required();
  verify->callback([] {
    const VerifyOutcome outcome = verify_promise(load_instance(instance), g.eps_phase);
    emit(io::to_json(outcome));
    if (std::holds_alternative<PromiseViolation>(outcome)) {
      std::cerr << json{{"code", "PromiseViolation"}, {"message", "gates do not satisfy the promise"}}.dump()
                << '\n';
      std::exit(1);
    }
  });
}

void add_switch_commands(CLI::App& app) {
  auto* sw = app.add_subcommand("switch", "Simulate the quantum switch protocol");
  sw->require_subcommand(1);

  auto* run = sw->add_subcommand("run", "Run the protocol on an instance");
  static std::string instance, psi_file;
  static std::optional<std::uint64_t> psi_seed;
  static int shots = 0;
  run->add_option("--instance", instance, "Instance file")->required();
  auto* psi_opt = run->add_option("--psi", psi_file, "Target state file ([[re, im], ...])");
  run->add_option("--random-psi", psi_seed, "Use a Haar-random target state with this seed")->excludes(psi_opt);
  run->add_option("--sample", shots, "Also draw this many measurement outcomes (uses --seed)");
  run->callback([] {
    const PromiseInstance inst = load_instance(instance);
    std::optional<Eigen::VectorXcd> psi;
    if (!psi_file.empty()) psi = io::state_from_json(io::read_json_file(psi_file));
    if (psi_seed) {
      if (common_kind(inst.gates) != GateKind::Qudit) {
        throw Error(ErrorCode::KindMismatch, "--random-psi needs qudit gates");
      }
      psi = random_state(std::get<QuditGate>(inst.gates.front()).dim(), *psi_seed);
    }
    const SwitchOutcome outcome = run_protocol(inst, psi, {g.eps_det, g.eps_phase, kDefaultEpsNorm});
    json j = io::to_json(outcome);
    if (shots > 0) j["samples"] = sample_outcomes(outcome, shots, g.seed);
    emit(j);
  });

  auto* sweep = sw->add_subcommand("sweep", "Recover every column over a matrix family");
  static std::string family = "fourier", target, a_list = "0";
  static int dmax = 6, kmax = 3;
  static double alpha = 1.0;
  sweep->add_option("--family", family, "fourier | sylvester | f4")
      ->check(CLI::IsMember({"fourier", "sylvester", "f4"}));
  sweep->add_option("--dmax", dmax, "Largest Fourier order");
  sweep->add_option("--kmax", kmax, "Largest Sylvester exponent");
  sweep->add_option("--a", a_list, "Comma-separated f4 parameters");
  sweep->add_option("--target", target, "qudit | cv | minimal (default: qudit, cv for f4)")
      ->check(CLI::IsMember({"qudit", "cv", "minimal"}));
  sweep->add_option("--alpha", alpha, "Displacement of the first gate (cv)");
  sweep->callback([] {
    std::vector<std::pair<std::string, CHMatrix>> mats;
    std::vector<double> params;
    if (family == "fourier") {
      for (int d = 2; d <= dmax; ++d) mats.emplace_back("fourier(" + std::to_string(d) + ")", fourier(d));
    } else if (family == "sylvester") {
      for (int k = 1; k <= kmax; ++k) {
        mats.emplace_back("sylvester(" + std::to_string(k) + ")", sylvester_hadamard(k));
      }
    } else {
      params = parse_list(a_list);
      for (double a : params) {
        mats.emplace_back("f4(" + json(a).dump() + ")", f4_family(a));
      }
    }
    const std::string t = !target.empty() ? target : family == "f4" ? "cv" : "qudit";
    SweepParams sp;
    sp.builder = t == "qudit" ? Builder::Qudit : t == "cv" ? Builder::Cv : Builder::MinimalCh4;
    sp.alpha = alpha;
    sp.psi_seed = g.seed;
    sp.protocol = {g.eps_det, g.eps_phase, kDefaultEpsNorm};
    json rows = json::array();
    for (std::size_t i = 0; i < mats.size(); ++i) {
      if (sp.builder == Builder::MinimalCh4) {
        if (family != "f4") throw Error(ErrorCode::DomainError, "the minimal target needs --family f4");
        sp.a = params[i];
      }
      const SweepReport r = sweep_columns(mats[i].second, sp);
      json deviations = json::array();
      for (const auto& c : r.columns) deviations.push_back(c.deviation);
      rows.push_back({{"matrix", mats[i].first},
                      {"target", t},
                      {"all_recovered", r.all_recovered},
                      {"worst_deviation", r.worst_deviation},
                      {"deviations", deviations}});
    }
    emit(rows);
  });
}

void add_scs_commands(CLI::App& app) {
  auto* scs = app.add_subcommand("scs", "Shortest common supersequences and query-cost census");
  scs->require_subcommand(1);

  auto* solve = scs->add_subcommand("solve", "Exact SCS of a permutation set");
  static std::string perms;
  static bool witness = false;
  solve->add_option("--perms", perms, "Digit strings in application order, e.g. 012,102,120")->required();
  solve->add_flag("--witness", witness, "Include a supersequence achieving the length");
  solve->callback([] {
    const auto seqs = io::parse_perm_list(perms);
    const ScsResult r = scs_exact(seqs, g.n_max);
    json j = {{"length", r.length}, {"qpg", static_cast<double>(r.length) / seqs.front().size()}};
    if (witness) j["witness"] = io::format_sequence(r.witness);
    emit(j);
  });

  static std::string engine = "auto", out;
  static int n = 3;
  static std::optional<std::uint64_t> sample;
  auto add_common = [](CLI::App* cmd) {
    cmd->add_option("--n", n, "Number of gates N")->required();
    cmd->add_option("--sample", sample, "Sample this many combinations instead of enumerating");
    cmd->add_option("--engine", engine, "auto | frontier | lattice")
        ->check(CLI::IsMember({"auto", "frontier", "lattice"}));
    cmd->add_option("--out", out, "Also write the CSV here");
  };

  auto* census_cmd = scs->add_subcommand("census", "SCS statistics over all p-sets containing the identity");
  static int p = 2;
  add_common(census_cmd);
  census_cmd->add_option("--p", p, "Number of orderings p")->required();
  census_cmd->callback([] {
    CensusOptions opts = census_options(engine);
    if (sample) {
      opts.mode = CensusMode::Sample;
      opts.sample_count = *sample;
    }
    emit_rows({census(n, p, opts)}, out);
  });

  auto* sweep = scs->add_subcommand("sweep", "Census rows for a range of p");
  static int p_min = 2, p_max = 2;
  add_common(sweep);
  sweep->add_option("--p-min", p_min, "Smallest p")->required();
  sweep->add_option("--p-max", p_max, "Largest p")->required();
  sweep->callback([] {
    CensusOptions opts = census_options(engine);
    if (sample) {
      opts.mode = CensusMode::Sample;
      opts.sample_count = *sample;
    }
    emit_rows(census_sweep(n, p_min, p_max, opts), out);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex Hadamard promise problems: matrices, gate synthesis, switch simulation, SCS census"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--eps-phase", g.eps_phase, "Phase tolerance (radians)")->check(CLI::PositiveNumber);
  app.add_option("--eps-unitary", g.eps_unitary, "Unitarity tolerance")->check(CLI::PositiveNumber);
  app.add_option("--eps-det", g.eps_det, "Determinism tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--budget", g.budget, "Exhaustive census budget in combinations, or 'unlimited'");
  app.add_option("--d-max", g.d_max, "Largest Butson complexity searched for float matrices")
      ->check(CLI::PositiveNumber);
  app.add_option("--n-max", g.n_max, "Largest N accepted by the exact SCS solver")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Census worker threads (0 = all cores)");
  app.add_flag("--json", g.json_tables, "Emit census tables as JSON instead of CSV");
  app.add_flag("--pretty", g.pretty, "Indented JSON; implies --json for census tables");

  add_matrix_commands(app);
  add_promise_commands(app);
  add_switch_commands(app);
  add_scs_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const CLI::App* deepest = &app;
    for (bool descended = true; descended;) {
      descended = false;
      for (const CLI::App* sub : deepest->get_subcommands()) {
        deepest = sub;
        descended = true;
        break;
      }
    }
    std::cerr << e.what() << "\n\n" << deepest->help();
    return 2;
  } catch (const Error& e) {
    std::cerr << json{{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"code", "InternalError"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
