#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "chpp/census.hpp"
#include "chpp/ch_matrix.hpp"
#include "chpp/promise.hpp"
#include "chpp/scs.hpp"
#include "chpp/switch_sim.hpp"

// JSON wire formats. Readers throw Error(ParseError) on schema violations and
// Error(MalformedMatrix) on ragged or mixed-representation matrices.
namespace chpp::io {

using nlohmann::json;

json to_json(const PhaseValue& phase);
json to_json(const CHMatrix& m);
CHMatrix matrix_from_json(const json& j);

json to_json(const std::vector<Gate>& gates);
std::vector<Gate> gates_from_json(const json& j);

json to_json(const PermutationSet& perms);
PermutationSet perms_from_json(const json& j);

/// `matrix` may be inline or a path string, resolved against base_dir.
json to_json(const PromiseInstance& inst);
PromiseInstance instance_from_json(const json& j, const std::filesystem::path& base_dir = {});

json to_json(const ValidationReport& report);
json to_json(const BHClass& cls);
json to_json(const Dephasing& d);
json to_json(const SwitchOutcome& outcome);
json to_json(const VerifyOutcome& outcome);
json to_json(const ScsResult& result);
json to_json(const CensusRow& row);

Eigen::VectorXcd state_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Parses "012,102,120" (one digit per gate) into permutations.
std::vector<Sequence> parse_perm_list(const std::string& text);
std::string format_sequence(const Sequence& s);

}  // namespace chpp::io
