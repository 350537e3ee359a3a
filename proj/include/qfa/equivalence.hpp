#pragma once

// Equivalence of machines by reachable-state span closure, with a
// brute-force k-equivalence oracle.

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "qfa/automata.hpp"

namespace qfa {

inline constexpr double kDefaultEquivalenceTolerance = 1e-7;
/// Largest |alphabet|^k accepted by the exhaustive procedures.
inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

struct EquivalenceVerdict {
  bool equivalent = true;
  std::optional<Word> counterexample;
  /// |f1(w) - f2(w)| at the counterexample, measured by direct evaluation.
  std::optional<double> value_gap;
  std::size_t basis_size = 0;
  std::size_t words_explored = 0;
  double tolerance = kDefaultEquivalenceTolerance;
};

/// Linear dynamics explored by the span closure: states are matrices (or row
/// vectors), symbols act linearly, and `functional` is a linear form.
struct LinearSystem {
  std::size_t symbol_count = 0;
  ComplexMatrix start{1, 1};
  std::function<ComplexMatrix(const ComplexMatrix&, std::size_t)> step;
  std::function<Complex(const ComplexMatrix&)> functional;
};

struct SpanClosure {
  /// Orthonormal under the Hilbert-Schmidt inner product.
  std::vector<ComplexMatrix> basis;
  /// generators[i] produced the state whose residual became basis[i].
  std::vector<IndexWord> generators;
  std::size_t words_explored = 0;
  /// First word (length-lex) whose state was rejected by the candidate filter.
  std::optional<IndexWord> stopped_at;
};

/// Breadth-first closure: extends every basis generator by each symbol in order
/// and inserts the resulting state with span_insert, until a full frontier adds
/// nothing. Every candidate word is offered to `stop_if` (when given) before
/// insertion; returning true ends the search. Words longer than `max_length`
/// are never generated.
SpanClosure span_closure(const LinearSystem& system, double span_tol = kDefaultSpanTolerance,
                         const std::function<bool(const IndexWord&, const ComplexMatrix&)>& stop_if = {},
                         std::optional<std::size_t> max_length = std::nullopt);

struct ReachableBasis {
  std::vector<ComplexMatrix> basis;
  std::vector<Word> words;
};

/// Basis of span{rho_x}. For an MO-LM the closure starts from Theta_cent(rho0)
/// and the words are bare (no end-markers).
ReachableBasis reachable_basis(const MO1gQFA& m, double span_tol = kDefaultSpanTolerance);
ReachableBasis reachable_basis(const MOLM& m, double span_tol = kDefaultSpanTolerance);

enum class EquivalenceMethod { direct, blm };

EquivalenceVerdict equivalent_mo(const MO1gQFA& m1, const MO1gQFA& m2, EquivalenceMethod method = EquivalenceMethod::direct,
                                 double tol = kDefaultEquivalenceTolerance, double span_tol = kDefaultSpanTolerance);

/// Compiles both machines to MO-LMs and compares them on cent x dollar, either
/// with the direct span procedure or through their bilinear forms with the end
/// markers folded into pi and eta. Counterexamples are reported as bare words.
EquivalenceVerdict equivalent_mm(const MM1gQFA& m1, const MM1gQFA& m2, EquivalenceMethod method = EquivalenceMethod::direct,
                                 double tol = kDefaultEquivalenceTolerance, double span_tol = kDefaultSpanTolerance);

/// Compares the word functions on every word of length <= k (see
/// make_word_function for what "word" means per machine kind). Throws
/// EnumerationGuardError when |alphabet|^k exceeds `limit`.
EquivalenceVerdict k_equivalent_bruteforce(const AnyMachine& a, const AnyMachine& b, std::size_t k,
                                           double tol = kDefaultEquivalenceTolerance,
                                           std::uint64_t limit = kEnumerationLimit);

/// |alphabet|^k, saturating at UINT64_MAX.
std::uint64_t word_count_bound(std::size_t alphabet_size, std::size_t k);

}  // namespace qfa
