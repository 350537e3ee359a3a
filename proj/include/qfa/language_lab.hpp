#pragma once

// Desk-scale check of bounded-error recognition: every word up to a length
// bound is classified by a reference DFA and scored by the machine.

#include <cstdint>
#include <optional>
#include <set>
#include <variant>

#include "qfa/automata.hpp"
#include "qfa/equivalence.hpp"

namespace qfa {

using RecognizingMachine = std::variant<MO1gQFA, MM1gQFA>;

struct Witness {
  Word word;
  double value = 0.0;
};

struct RecognitionReport {
  double lambda = 0.0;
  double epsilon = 0.0;
  std::size_t max_len = 0;
  /// Smallest acceptance value over in-language words; absent when there are none.
  std::optional<Witness> worst_in;
  /// Largest acceptance value over out-of-language words; absent when there are none.
  std::optional<Witness> worst_out;
  std::size_t words_checked = 0;
  bool pass = false;
};

struct MarginScan {
  bool separating = false;
  double lambda = 0.0;
  double epsilon = 0.0;
  std::optional<Witness> worst_in;
  std::optional<Witness> worst_out;
};

/// Passes iff worst_in >= lambda + epsilon and worst_out <= lambda - epsilon.
/// Requires epsilon > 0 and lambda in (0, 1]; words in `skip` are ignored.
RecognitionReport check_bounded_error(const RecognizingMachine& machine, const DFA& reference, double lambda,
                                      double epsilon, std::size_t max_len, const std::set<Word>& skip = {},
                                      std::uint64_t limit = kEnumerationLimit);

/// Best cut-point (a + b) / 2 and margin (a - b) / 2 where a is the minimum
/// in-language value and b the maximum out-of-language value.
MarginScan margin_scan(const RecognizingMachine& machine, const DFA& reference, std::size_t max_len,
                       const std::set<Word>& skip = {}, std::uint64_t limit = kEnumerationLimit);

}  // namespace qfa
