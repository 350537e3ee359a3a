#include "qfa/examples.hpp"

#include <cmath>

#include "qfa/errors.hpp"

namespace qfa::examples {

namespace {

constexpr std::size_t q0 = 0;
constexpr std::size_t q1 = 1;
constexpr std::size_t q_acc = 2;
constexpr std::size_t q_rej = 3;

ComplexMatrix ket(std::size_t n, std::initializer_list<std::pair<std::size_t, double>> amplitudes) {
  ComplexMatrix v(n, 1);
  for (const auto& [i, a] : amplitudes) v(i, 0) = a;
  return v;
}

ComplexMatrix projector_onto(std::size_t n, std::initializer_list<std::size_t> states) {
  ComplexMatrix p(n, n);
  for (auto q : states) p(q, q) = 1.0;
  return p;
}

}  // namespace

ComplexMatrix complete_unitary(std::size_t n, const std::vector<std::pair<std::size_t, ComplexMatrix>>& columns) {
  std::vector<ComplexMatrix> basis;
  std::vector<bool> fixed(n, false);
  ComplexMatrix u(n, n);
  for (const auto& [index, column] : columns) {
    if (index >= n || column.rows() != n || column.cols() != 1) throw DimensionError("complete_unitary: bad column");
    if (fixed[index]) throw ValidationError("complete_unitary: column given twice");
    fixed[index] = true;
    for (std::size_t i = 0; i < n; ++i) u(i, index) = column(i, 0);
    basis.push_back(column);
  }
  ComplexMatrix expected_gram(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (fixed[j]) expected_gram(j, j) = 1.0;
  }
  if (max_abs_diff(dagger(u) * u, expected_gram) > kValidationTolerance) {
    throw ValidationError("complete_unitary: given columns are not orthonormal");
  }
  std::size_t next_free = 0;
  for (std::size_t e = 0; e < n; ++e) {
    while (next_free < n && fixed[next_free]) ++next_free;
    if (next_free == n) break;
    ComplexMatrix candidate(n, 1);
    candidate(e, 0) = 1.0;
    if (!span_insert(basis, candidate, 1e-10)) continue;
    for (std::size_t i = 0; i < n; ++i) u(i, next_free) = basis.back()(i, 0);
    fixed[next_free] = true;
  }
  return u;
}

MM1gQFA mm_a_ab_star(bool b_accepts) {
  constexpr std::size_t n = 4;
  const double h = 1.0 / std::sqrt(2.0);
  const ComplexMatrix u_a = complete_unitary(n, {{q0, ket(n, {{q1, h}, {q_acc, h}})}, {q1, ket(n, {{q1, h}, {q_acc, -h}})}});
  const ComplexMatrix u_b = complete_unitary(
      n, {{q0, ket(n, {{b_accepts ? q_acc : q_rej, 1.0}})}, {q1, ket(n, {{q1, h}, {b_accepts ? q_rej : q_acc, h}})}});
  const ComplexMatrix u_dollar = complete_unitary(n, {{q0, ket(n, {{q_acc, 1.0}})}, {q1, ket(n, {{q_rej, 1.0}})}});

  ProjectorSet projectors({"non", "acc", "rej"},
                          {projector_onto(n, {q0, q1}), projector_onto(n, {q_acc}), projector_onto(n, {q_rej})});
  return {Alphabet({"a", "b"}),
          ComplexMatrix::basis_op(n, q0, q0),
          {QuantumOperation({u_a}), QuantumOperation({u_b})},
          QuantumOperation::identity(n),
          QuantumOperation({u_dollar}),
          std::move(projectors)};
}

DFA dfa_a_ab_star() {
  // 0: start, 1: saw leading a (accepting sink), 2: dead.
  return {Alphabet({"a", "b"}), 3, 0, {{1, 1, 2}, {2, 1, 2}}, {false, true, false}};
}

ProbabilisticAutomaton pa_swap() {
  return {Alphabet({"a"}), {1.0, 0.0}, {{{0.0, 1.0}, {1.0, 0.0}}}, {0, 1}};
}

ProbabilisticAutomaton pa_uniform() {
  return {Alphabet({"a"}), {1.0, 0.0}, {{{0.5, 0.5}, {0.5, 0.5}}}, {0, 1}};
}

}  // namespace qfa::examples
