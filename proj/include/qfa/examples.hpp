#pragma once

// Small reference machines used by the fixtures, tests and documentation.

#include <utility>
#include <vector>

#include "qfa/automata.hpp"

namespace qfa::examples {

/// Completes the given (column index, unit column) pairs to a unitary. Free
/// columns are filled by Gram-Schmidt over the standard basis, in order. The
/// given columns must be orthonormal.
ComplexMatrix complete_unitary(std::size_t n, const std::vector<std::pair<std::size_t, ComplexMatrix>>& columns);

/// Four-state measure-many machine for a{a,b}* over basis (q0, q1, q_acc, q_rej):
///   U_a q0 = (q1 + q_acc)/sqrt2, U_a q1 = (q1 - q_acc)/sqrt2,
///   U_b q0 = q_rej,              U_b q1 = (q1 + q_acc)/sqrt2,
///   U_$ q0 = q_acc,              U_$ q1 = q_rej,  U_cent = I.
/// With `b_accepts` set, U_b q0 = q_acc and U_b q1 = (q1 + q_rej)/sqrt2 instead
/// (the second change keeps U_b unitary).
/// Note that U_$ q0 = q_acc accepts the empty word with certainty.
MM1gQFA mm_a_ab_star(bool b_accepts = false);

/// Three-state DFA for a{a,b}*: start, accept sink, reject sink.
DFA dfa_a_ab_star();

/// Two states, one symbol 'a' swapping them; pi = (1, 0), eta = (0, 1)^T.
ProbabilisticAutomaton pa_swap();

/// Two states, A(a) = [[.5, .5], [.5, .5]]; pi = (1, 0), eta = (0, 1)^T.
ProbabilisticAutomaton pa_uniform();

}  // namespace qfa::examples
