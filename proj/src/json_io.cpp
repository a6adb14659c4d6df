#include "chpp/json_io.hpp"

#include <fstream>
#include <sstream>

#include "chpp/errors.hpp"

namespace chpp::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) parse_error(std::string("missing field '") + name + "'");
  return j.at(name);
}

template <typename T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    parse_error(std::string("bad value for ") + what);
  }
}

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) parse_error("complex numbers are [re, im] pairs");
  return {get_as<double>(j[0], "real part"), get_as<double>(j[1], "imaginary part")};
}

}  // namespace

json to_json(const PhaseValue& phase) {
  if (const auto* e = std::get_if<ExactTurn>(&phase)) return {{"num", e->num()}, {"den", e->den()}};
  return std::get<FloatRadians>(phase).value();
}

json to_json(const CHMatrix& m) {
  json rows = json::array();
  for (int j = 0; j < m.order(); ++j) {
    json row = json::array();
    for (int k = 0; k < m.order(); ++k) row.push_back(to_json(m.phase(j, k)));
    rows.push_back(std::move(row));
  }
  return {{"p", m.order()}, {"rep", m.rep() == Rep::Exact ? "exact" : "float"}, {"phases", rows}};
}

CHMatrix matrix_from_json(const json& j) {
  const int p = get_as<int>(field(j, "p"), "p");
  const auto rep = get_as<std::string>(field(j, "rep"), "rep");
  if (rep != "exact" && rep != "float") parse_error("rep must be \"exact\" or \"float\"");
  const json& phases = field(j, "phases");
  if (!phases.is_array()) parse_error("phases must be an array of rows");
  if (static_cast<int>(phases.size()) != p) {
    throw Error(ErrorCode::MalformedMatrix, "phase grid has " + std::to_string(phases.size()) +
                                                " rows but p = " + std::to_string(p));
  }
  std::vector<std::vector<PhaseValue>> grid;
  for (const json& row : phases) {
    if (!row.is_array()) parse_error("phase rows must be arrays");
    std::vector<PhaseValue> out;
    for (const json& v : row) {
      if (v.is_object()) {
        if (rep != "exact") throw Error(ErrorCode::MalformedMatrix, "exact entry in a float matrix");
        out.emplace_back(ExactTurn(get_as<std::int64_t>(field(v, "num"), "num"),
                                   get_as<std::int64_t>(field(v, "den"), "den")));
      } else if (v.is_number()) {
        if (rep != "float") throw Error(ErrorCode::MalformedMatrix, "float entry in an exact matrix");
        out.emplace_back(FloatRadians(v.get<double>()));
      } else {
        parse_error("phase entries are numbers or {num, den} objects");
      }
    }
    grid.push_back(std::move(out));
  }
  return CHMatrix::from_grid(grid);
}

json to_json(const std::vector<Gate>& gates) {
  if (gates.empty()) parse_error("empty gate set");
  if (common_kind(gates) == GateKind::Weyl) {
    json arr = json::array();
    for (const Gate& g : gates) {
      const auto& w = std::get<WeylOp>(g);
      arr.push_back({{"theta", w.theta}, {"beta", w.beta}, {"gamma", w.gamma}});
    }
    return {{"kind", "weyl"}, {"gates", arr}};
  }
  const int dim = std::get<QuditGate>(gates.front()).dim();
  json arr = json::array();
  for (const Gate& g : gates) {
    const auto& u = std::get<QuditGate>(g).u;
    json flat = json::array();
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) flat.push_back(complex_to_json(u(r, c)));
    }
    arr.push_back(std::move(flat));
  }
  return {{"kind", "qudit"}, {"dim", dim}, {"gates", arr}};
}

std::vector<Gate> gates_from_json(const json& j) {
  const auto kind = get_as<std::string>(field(j, "kind"), "kind");
  const json& arr = field(j, "gates");
  if (!arr.is_array() || arr.empty()) parse_error("gates must be a non-empty array");
  std::vector<Gate> out;
  if (kind == "weyl") {
    for (const json& g : arr) {
      out.emplace_back(WeylOp{wrap_phase(get_as<double>(field(g, "theta"), "theta")),
                              get_as<double>(field(g, "beta"), "beta"),
                              get_as<double>(field(g, "gamma"), "gamma")});
    }
    return out;
  }
  if (kind != "qudit") throw Error(ErrorCode::KindMismatch, "unknown gate kind '" + kind + "'");
  const int dim = get_as<int>(field(j, "dim"), "dim");
  if (dim < 1) parse_error("dim must be positive");
  for (const json& g : arr) {
    if (!g.is_array()) parse_error("qudit gates are arrays of [re, im] entries");
    // Accept both a flat row-major list and a list of rows.
    std::vector<Complex> flat;
    for (const json& e : g) {
      if (e.is_array() && !e.empty() && e[0].is_array()) {
        for (const json& x : e) flat.push_back(complex_from_json(x));
      } else {
        flat.push_back(complex_from_json(e));
      }
    }
    if (flat.size() != static_cast<std::size_t>(dim) * dim) {
      throw Error(ErrorCode::DimensionMismatch, "qudit gate does not have dim^2 entries");
    }
    CMatrix u(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) u(r, c) = flat[static_cast<std::size_t>(r) * dim + c];
    }
    out.emplace_back(QuditGate{u});
  }
  return out;
}

json to_json(const PermutationSet& perms) {
  json arr = json::array();
  for (const auto& p : perms.perms()) arr.push_back(p.order());
  return arr;
}

PermutationSet perms_from_json(const json& j) {
  if (!j.is_array()) parse_error("perms must be an array of index lists");
  std::vector<Permutation> perms;
  for (const json& p : j) perms.emplace_back(get_as<std::vector<int>>(p, "permutation"));
  return PermutationSet(std::move(perms));
}

json to_json(const PromiseInstance& inst) {
  json out = {{"matrix", to_json(inst.matrix)}, {"perms", to_json(inst.perm_set)}, {"gates", to_json(inst.gates)}};
  out["claimed_column"] = inst.claimed_column ? json(*inst.claimed_column) : json(nullptr);
  return out;
}

PromiseInstance instance_from_json(const json& j, const std::filesystem::path& base_dir) {
  const json& mj = field(j, "matrix");
  CHMatrix m = mj.is_string() ? matrix_from_json(read_json_file(base_dir / mj.get<std::string>()))
                              : matrix_from_json(mj);
  std::optional<int> claimed;
  if (j.contains("claimed_column") && !j.at("claimed_column").is_null()) {
    claimed = get_as<int>(j.at("claimed_column"), "claimed_column");
  }
  return PromiseInstance{std::move(m), perms_from_json(field(j, "perms")), gates_from_json(field(j, "gates")),
                         claimed};
}

json to_json(const ValidationReport& report) {
  return {{"ok", report.ok}, {"max_row_pair_deviation", report.max_row_pair_deviation}};
}

json to_json(const BHClass& cls) {
  if (const auto* b = std::get_if<Butson>(&cls)) return {{"butson", b->complexity}};
  const auto& nb = std::get<NotButson>(cls);
  return {{"not_butson", {{"row", nb.row}, {"col", nb.col}}}};
}

json to_json(const Dephasing& d) {
  json rows = json::array(), cols = json::array();
  for (const auto& v : d.row_factors) rows.push_back(to_json(v));
  for (const auto& v : d.col_factors) cols.push_back(to_json(v));
  return {{"matrix", to_json(d.matrix)}, {"row_factors", rows}, {"col_factors", cols}};
}

json to_json(const SwitchOutcome& outcome) {
  return {{"distribution", outcome.distribution},
          {"argmax", outcome.argmax},
          {"deterministic", outcome.deterministic}};
}

json to_json(const VerifyOutcome& outcome) {
  if (const auto* m = std::get_if<PromiseMatch>(&outcome)) return {{"column", m->column}};
  const auto& v = std::get<PromiseViolation>(outcome);
  return {{"violation",
           {{"j", v.row},
            {"expected", v.expected ? json(*v.expected) : json(nullptr)},
            {"got", v.got ? json(*v.got) : json(nullptr)}}}};
}

json to_json(const ScsResult& result) {
  return {{"length", result.length}, {"witness", format_sequence(result.witness)}};
}

json to_json(const CensusRow& row) {
  return {{"N", row.n},
          {"p", row.p},
          {"combos", row.combos},
          {"mode", row.mode == CensusMode::Exhaustive ? "exhaustive" : "sample"},
          {"min_len", row.min_len},
          {"max_len", row.max_len},
          {"sum_len", row.sum_len},
          {"avg_len", row.avg_len},
          {"avg_len_stderr", row.avg_len_stderr},
          {"min_qpg", row.min_qpg},
          {"max_qpg", row.max_qpg},
          {"avg_qpg", row.avg_qpg},
          {"switch_qpg", row.switch_qpg}};
}

Eigen::VectorXcd state_from_json(const json& j) {
  if (!j.is_array() || j.empty()) parse_error("state must be a non-empty array of [re, im]");
  Eigen::VectorXcd v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = complex_from_json(j[i]);
  return v;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << text;
}

std::vector<Sequence> parse_perm_list(const std::string& text) {
  std::vector<Sequence> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Sequence s;
    for (char c : item) {
      if (c == ' ') continue;
      if (c < '0' || c > '9') parse_error("permutations are digit strings like 012,102");
      s.push_back(c - '0');
    }
    if (s.empty()) parse_error("empty permutation in list");
    out.push_back(std::move(s));
  }
  if (out.empty()) parse_error("no permutations given");
  return out;
}

std::string format_sequence(const Sequence& s) {
  std::string out;
  for (int v : s) out += std::to_string(v);
  return out;
}

}  // namespace chpp::io
