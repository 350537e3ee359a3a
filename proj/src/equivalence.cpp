#include "qfa/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qfa/errors.hpp"
#include "qfa/transforms.hpp"

namespace qfa {

namespace {

/// perm[i] = index in `other` of symbol i of `reference`.
std::vector<std::size_t> symbol_mapping(const std::vector<std::string>& reference, const std::vector<std::string>& other) {
  if (reference.size() != other.size()) throw ValidationError("machines have different alphabets");
  std::vector<std::size_t> perm;
  for (const auto& s : reference) {
    const auto it = std::find(other.begin(), other.end(), s);
    if (it == other.end()) throw ValidationError("machines have different alphabets (symbol '" + s + "')");
    perm.push_back(static_cast<std::size_t>(it - other.begin()));
  }
  return perm;
}

ComplexMatrix half_sum(const ComplexMatrix& a, const ComplexMatrix& b) { return direct_sum(0.5 * a, 0.5 * b); }

/// Shared driver for the direct-sum constructions: f2 - f1 is read off the
/// combined state by `system.functional`; hits are re-verified by `direct_gap`.
EquivalenceVerdict decide(const LinearSystem& system, const Alphabet& alphabet, double tol, double span_tol,
                          const std::function<double(const Word&)>& direct_gap,
                          std::optional<std::size_t> max_length = std::nullopt) {
  std::optional<double> gap;
  const auto stop_if = [&](const IndexWord& w, const ComplexMatrix& state) {
    if (std::abs(system.functional(state)) <= tol) return false;
    const double measured = direct_gap(alphabet.decode(w));
    if (measured <= tol) return false;
    gap = measured;
    return true;
  };
  const SpanClosure closure = span_closure(system, span_tol, stop_if, max_length);
  EquivalenceVerdict verdict;
  verdict.tolerance = tol;
  verdict.basis_size = closure.basis.size();
  verdict.words_explored = closure.words_explored;
  if (closure.stopped_at) {
    verdict.equivalent = false;
    verdict.counterexample = alphabet.decode(*closure.stopped_at);
    verdict.value_gap = gap;
  }
  return verdict;
}

EquivalenceVerdict equivalent_mo_direct(const MO1gQFA& m1, const MO1gQFA& m2, double tol, double span_tol) {
  const auto perm = symbol_mapping(m1.alphabet().symbols(), m2.alphabet().symbols());
  std::vector<SuperOperator> ops;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    ops.emplace_back(direct_sum_kraus(m1.op(s).kraus(), m2.op(perm[s]).kraus()));
  }
  const ComplexMatrix signed_acc = direct_sum(-1.0 * m1.p_acc(), m2.p_acc());

  LinearSystem system;
  system.symbol_count = perm.size();
  system.start = half_sum(m1.rho0(), m2.rho0());
  system.step = [ops](const ComplexMatrix& rho, std::size_t s) { return apply(ops[s], rho); };
  system.functional = [signed_acc](const ComplexMatrix& rho) { return 2.0 * trace(signed_acc * rho); };
  return decide(system, m1.alphabet(), tol, span_tol, [&](const Word& w) {
    return std::abs(mo_accept_prob(m1, w) - mo_accept_prob(m2, w));
  });
}

/// Decides pre * A1(x) * post1 = pre * A2(x) * post2 on the direct sum of two
/// bilinear machines whose mats are indexed by `perm` (second machine) over the
/// first `symbol_count` symbols. `pre_*`/`post_*` are absorbed into pi and eta.
EquivalenceVerdict blm_pair(const BilinearMachine& b1, const BilinearMachine& b2, const std::vector<std::size_t>& perm,
                            const ComplexMatrix& pi1, const ComplexMatrix& eta1, const ComplexMatrix& pi2,
                            const ComplexMatrix& eta2, const Alphabet& alphabet, double tol, double span_tol,
                            const std::function<double(const Word&)>& direct_gap) {
  std::vector<ComplexMatrix> mats;
  for (std::size_t s = 0; s < perm.size(); ++s) mats.push_back(direct_sum(b1.mats()[s], b2.mats()[perm[s]]));

  const std::size_t n1 = b1.states();
  const std::size_t n2 = b2.states();
  ComplexMatrix start(1, n1 + n2);
  ComplexMatrix eta(n1 + n2, 1);
  for (std::size_t i = 0; i < n1; ++i) {
    start(0, i) = pi1(0, i);
    eta(i, 0) = -eta1(i, 0);
  }
  for (std::size_t i = 0; i < n2; ++i) {
    start(0, n1 + i) = pi2(0, i);
    eta(n1 + i, 0) = eta2(i, 0);
  }

  LinearSystem system;
  system.symbol_count = perm.size();
  system.start = std::move(start);
  system.step = [mats](const ComplexMatrix& v, std::size_t s) { return v * mats[s]; };
  system.functional = [eta](const ComplexMatrix& v) { return (v * eta)(0, 0); };
  // Bilinear machines with N1 and N2 states agree everywhere iff they agree up to length N1 + N2 - 1.
  return decide(system, alphabet, tol, span_tol, direct_gap, n1 + n2 - 1);
}

EquivalenceVerdict equivalent_mo_blm(const MO1gQFA& m1, const MO1gQFA& m2, double tol, double span_tol) {
  const auto perm = symbol_mapping(m1.alphabet().symbols(), m2.alphabet().symbols());
  const BilinearMachine b1 = mo_to_blm(m1);
  const BilinearMachine b2 = mo_to_blm(m2);
  return blm_pair(b1, b2, perm, b1.pi(), b1.eta(), b2.pi(), b2.eta(), m1.alphabet(), tol, span_tol,
                  [&](const Word& w) { return std::abs(mo_accept_prob(m1, w) - mo_accept_prob(m2, w)); });
}

EquivalenceVerdict equivalent_mm_blm(const MM1gQFA& m1, const MM1gQFA& m2, double tol, double span_tol) {
  const auto perm = symbol_mapping(m1.alphabet().symbols(), m2.alphabet().symbols());
  // Symbols of the compiled machines are the alphabet followed by the two end-markers.
  const BilinearMachine b1 = mo_to_blm(mm_to_molm(m1));
  const BilinearMachine b2 = mo_to_blm(mm_to_molm(m2));
  const std::size_t cent = perm.size(), dollar = perm.size() + 1;
  return blm_pair(b1, b2, perm, b1.pi() * b1.mats()[cent], b1.mats()[dollar] * b1.eta(), b2.pi() * b2.mats()[cent],
                  b2.mats()[dollar] * b2.eta(), m1.alphabet(), tol, span_tol, [&](const Word& w) {
                    return std::abs(mm_accept_prob(m1, w).accept - mm_accept_prob(m2, w).accept);
                  });
}

EquivalenceVerdict equivalent_mm_direct(const MM1gQFA& m1, const MM1gQFA& m2, double tol, double span_tol) {
  const auto perm = symbol_mapping(m1.alphabet().symbols(), m2.alphabet().symbols());
  const MOLM c1 = mm_to_molm(m1);
  const MOLM c2 = mm_to_molm(m2);
  std::vector<SuperOperator> ops;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    ops.emplace_back(direct_sum_kraus(c1.ops()[s].kraus(), c2.ops()[perm[s]].kraus()));
  }
  const SuperOperator cent(direct_sum_kraus(c1.cent_op().kraus(), c2.cent_op().kraus()));
  const SuperOperator dollar(direct_sum_kraus(c1.dollar_op().kraus(), c2.dollar_op().kraus()));
  const ComplexMatrix signed_acc = direct_sum(-1.0 * c1.p_acc(), c2.p_acc());

  LinearSystem system;
  system.symbol_count = perm.size();
  system.start = apply(cent, half_sum(c1.rho0(), c2.rho0()));
  system.step = [ops](const ComplexMatrix& rho, std::size_t s) { return apply(ops[s], rho); };
  system.functional = [dollar, signed_acc](const ComplexMatrix& rho) {
    return 2.0 * trace(signed_acc * apply(dollar, rho));
  };
  return decide(system, m1.alphabet(), tol, span_tol, [&](const Word& w) {
    return std::abs(mm_accept_prob(m1, w).accept - mm_accept_prob(m2, w).accept);
  });
}

}  // namespace

SpanClosure span_closure(const LinearSystem& system, double span_tol,
                         const std::function<bool(const IndexWord&, const ComplexMatrix&)>& stop_if,
                         std::optional<std::size_t> max_length) {
  SpanClosure closure;
  std::vector<ComplexMatrix> states;
  const auto offer = [&](IndexWord word, ComplexMatrix state) {
    ++closure.words_explored;
    if (stop_if && stop_if(word, state)) {
      closure.stopped_at = std::move(word);
      return true;
    }
    if (span_insert(closure.basis, state, span_tol)) {
      closure.generators.push_back(std::move(word));
      states.push_back(std::move(state));
    }
    return false;
  };

  if (offer({}, system.start)) return closure;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (max_length && closure.generators[i].size() >= *max_length) continue;
    for (std::size_t s = 0; s < system.symbol_count; ++s) {
      IndexWord word = closure.generators[i];
      word.push_back(s);
      if (offer(std::move(word), system.step(states[i], s))) return closure;
    }
  }
  return closure;
}

ReachableBasis reachable_basis(const MO1gQFA& m, double span_tol) {
  LinearSystem system;
  system.symbol_count = m.alphabet().size();
  system.start = m.rho0();
  system.step = [&m](const ComplexMatrix& rho, std::size_t s) { return apply(m.op(s), rho); };
  auto closure = span_closure(system, span_tol);
  ReachableBasis out{std::move(closure.basis), {}};
  for (const auto& w : closure.generators) out.words.push_back(m.alphabet().decode(w));
  return out;
}

ReachableBasis reachable_basis(const MOLM& m, double span_tol) {
  LinearSystem system;
  system.symbol_count = m.alphabet().size();
  system.start = apply(m.cent_op(), m.rho0());
  system.step = [&m](const ComplexMatrix& rho, std::size_t s) { return apply(m.ops()[s], rho); };
  auto closure = span_closure(system, span_tol);
  ReachableBasis out{std::move(closure.basis), {}};
  for (const auto& w : closure.generators) out.words.push_back(m.alphabet().decode(w));
  return out;
}

EquivalenceVerdict equivalent_mo(const MO1gQFA& m1, const MO1gQFA& m2, EquivalenceMethod method, double tol,
                                 double span_tol) {
  return method == EquivalenceMethod::direct ? equivalent_mo_direct(m1, m2, tol, span_tol)
                                             : equivalent_mo_blm(m1, m2, tol, span_tol);
}

EquivalenceVerdict equivalent_mm(const MM1gQFA& m1, const MM1gQFA& m2, EquivalenceMethod method, double tol,
                                 double span_tol) {
  return method == EquivalenceMethod::direct ? equivalent_mm_direct(m1, m2, tol, span_tol)
                                             : equivalent_mm_blm(m1, m2, tol, span_tol);
}

std::uint64_t word_count_bound(std::size_t alphabet_size, std::size_t k) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (alphabet_size != 0 && total > std::numeric_limits<std::uint64_t>::max() / alphabet_size) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= alphabet_size;
  }
  return total;
}

EquivalenceVerdict k_equivalent_bruteforce(const AnyMachine& a, const AnyMachine& b, std::size_t k, double tol,
                                           std::uint64_t limit) {
  const auto fa = make_word_function(a);
  const auto fb = make_word_function(b);
  const auto perm = symbol_mapping(fa->symbols(), fb->symbols());
  const std::size_t sigma = perm.size();
  if (word_count_bound(sigma, k) > limit) {
    throw EnumerationGuardError("k_equivalent_bruteforce: " + std::to_string(sigma) + "^" + std::to_string(k) +
                                " words exceed the enumeration limit of " + std::to_string(limit));
  }

  EquivalenceVerdict verdict;
  verdict.tolerance = tol;
  std::optional<IndexWord> best;
  double best_gap = 0.0;
  IndexWord word;

  // Depth-first in lexicographic order; once a violation of length L is known only
  // shorter words can beat it in length-lex order, so the depth bound shrinks.
  const auto visit = [&](const auto& self, const WordFunction::Run& ra, const WordFunction::Run& rb) -> void {
    ++verdict.words_explored;
    const double gap = std::abs(fa->finish(ra) - fb->finish(rb));
    if (gap > tol) {
      best = word;
      best_gap = gap;
      return;
    }
    const std::size_t depth_limit = best ? best->size() - 1 : k;
    if (word.size() >= depth_limit) return;
    for (std::size_t s = 0; s < sigma; ++s) {
      word.push_back(s);
      self(self, fa->step(ra, s), fb->step(rb, perm[s]));
      word.pop_back();
      if (best && word.size() + 1 >= best->size()) return;
    }
  };
  visit(visit, fa->start(), fb->start());

  if (best) {
    verdict.equivalent = false;
    Word decoded;
    for (auto s : *best) decoded.push_back(fa->symbols()[s]);
    verdict.counterexample = std::move(decoded);
    verdict.value_gap = best_gap;
  }
  return verdict;
}

}  // namespace qfa
