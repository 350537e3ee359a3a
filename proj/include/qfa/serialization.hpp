#pragma once

// Self-describing JSON machine files.
//
//   {"kind": "mo1gqfa", "version": 1, "alphabet": ["a", "b"], ...}
//
// Complex entries are [re, im] pairs (plain numbers are read as real);
// matrices are row-major nested arrays. Per kind:
//   mo1gqfa  rho0, ops {symbol: [kraus...]}, p_acc
//   mm1gqfa  rho0, ops {symbol | "¢" | "$": [kraus...]}, projectors {non, acc, rej}
//   molm     rho0, ops {symbol | "¢" | "$": [kraus...]}, p_acc
//   blm      pi (1 x n), mats {symbol: matrix}, eta (n x 1); alphabet may hold end-markers
//   pa       pi [p...], mats {symbol: [[p...]...]}, eta [0|1...]
//   dfa      states, start, accepting [state...], delta {symbol: [target per state]}

#include <filesystem>
#include "json.hpp"

#include "qfa/automata.hpp"

namespace qfa {

inline constexpr int kMachineFileVersion = 1;

nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Throws ValidationError on ragged or non-numeric input.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json machine_to_json(const AnyMachine& m);
/// Throws ValidationError for malformed files and for machines failing validation.
AnyMachine machine_from_json(const nlohmann::json& j);

AnyMachine load_machine(const std::filesystem::path& path);
void save_machine(const std::filesystem::path& path, const AnyMachine& m);

}  // namespace qfa
