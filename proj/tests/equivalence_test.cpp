#include <doctest.h>

#include <cmath>
#include <limits>

#include "qfa/equivalence.hpp"
#include "qfa/errors.hpp"
#include "qfa/examples.hpp"
#include "qfa/transforms.hpp"
#include "support/random_machines.hpp"

using namespace qfa;

namespace {

const std::vector<std::string> kAB{"a", "b"};

ComplexMatrix cycle_permutation(std::size_t n) {
  ComplexMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) q((i + 1) % n, i) = 1.0;
  return q;
}

MO1gQFA conjugated(const MO1gQFA& m, const ComplexMatrix& q) {
  const auto c = [&](const ComplexMatrix& x) { return q * x * dagger(q); };
  std::vector<QuantumOperation> ops;
  for (const auto& op : m.ops()) {
    std::vector<ComplexMatrix> kraus;
    for (const auto& e : op.kraus()) kraus.push_back(c(e));
    ops.emplace_back(std::move(kraus));
  }
  return {m.alphabet(), c(m.rho0()), std::move(ops), c(m.p_acc())};
}

/// Accepts exactly the words of length `len`.
DFA length_exactly(std::size_t len) {
  const std::size_t dead = len + 1;
  std::vector<std::size_t> row(len + 2);
  for (std::size_t q = 0; q <= len; ++q) row[q] = q + 1;
  row[dead] = dead;
  std::vector<bool> accepting(len + 2, false);
  accepting[len] = true;
  return {Alphabet(kAB), len + 2, 0, {row, row}, accepting};
}

DFA reject_all() { return {Alphabet(kAB), 1, 0, {{0}, {0}}, {false}}; }

MO1gQFA embed(const DFA& d) { return pa_to_mo(dfa_to_pa(d)); }

std::size_t combined_bound(std::size_t n1, std::size_t n2) { return (n1 + n2) * (n1 + n2); }

}  // namespace

TEST_CASE("reachable_basis") {
  testing::RandomMachines gen(1);
  const MO1gQFA identity(Alphabet(kAB), gen.density(2), {QuantumOperation::identity(2), QuantumOperation::identity(2)},
                         ComplexMatrix::identity(2));
  const auto id = reachable_basis(identity);
  CHECK(id.basis.size() == 1);
  CHECK(id.words == std::vector<Word>{Word{}});

  const auto swap = reachable_basis(pa_to_mo(examples::pa_swap()));
  CHECK(swap.basis.size() == 2);
  CHECK(swap.words == std::vector<Word>{Word{}, Word{"a"}});
  CHECK(std::abs(std::abs(swap.basis[1](1, 1)) - 1.0) < 1e-12);

  for (int t = 0; t < 50; ++t) {
    const std::size_t n = gen.index(1, 4);
    CHECK(reachable_basis(gen.mo(n, kAB)).basis.size() <= n * n);
  }
  const MOLM c = mm_to_molm(gen.mm(3, kAB));
  CHECK(reachable_basis(c).basis.size() <= 9);
}

TEST_CASE("equivalent_mo examples") {
  testing::RandomMachines gen(2);
  const MO1gQFA m = gen.mo(3, kAB);
  for (auto method : {EquivalenceMethod::direct, EquivalenceMethod::blm}) {
    const auto same = equivalent_mo(m, m, method);
    CHECK(same.equivalent);
    CHECK_FALSE(same.counterexample);
    CHECK(same.basis_size <= combined_bound(3, 3));
    CHECK(same.tolerance == kDefaultEquivalenceTolerance);

    const MO1gQFA permuted = conjugated(m, cycle_permutation(3));
    CHECK(equivalent_mo(m, permuted, method).equivalent);
    CHECK(k_equivalent_bruteforce(m, permuted, 4).equivalent);

    const double f0 = mo_accept_prob(m, {});
    REQUIRE(std::abs(f0 - 0.5) > 1e-3);
    const auto against_complement = equivalent_mo(m, complement(m), method);
    CHECK_FALSE(against_complement.equivalent);
    REQUIRE(against_complement.counterexample);
    CHECK(against_complement.counterexample->empty());
    CHECK(*against_complement.value_gap == doctest::Approx(std::abs(1.0 - 2.0 * f0)).epsilon(1e-9));
  }

  const MO1gQFA unary(Alphabet({"a"}), gen.density(3), {gen.channel(3)}, ComplexMatrix::identity(3));
  CHECK_THROWS_AS(equivalent_mo(m, unary), ValidationError);
}

TEST_CASE("equivalent_mo reports the shortest counterexample") {
  const auto v = equivalent_mo(embed(reject_all()), embed(length_exactly(3)));
  CHECK_FALSE(v.equivalent);
  CHECK(*v.counterexample == Word{"a", "a", "a"});
  CHECK(*v.value_gap == doctest::Approx(1.0));
  const auto vb = equivalent_mo(embed(reject_all()), embed(length_exactly(3)), EquivalenceMethod::blm);
  CHECK(*vb.counterexample == Word{"a", "a", "a"});
}

TEST_CASE("equivalent_mm examples") {
  const MM1gQFA footnote = examples::mm_a_ab_star();
  const auto same = equivalent_mm(footnote, footnote);
  CHECK(same.equivalent);
  CHECK(same.basis_size <= combined_bound(4, 4));

  for (auto method : {EquivalenceMethod::direct, EquivalenceMethod::blm}) {
    CHECK(equivalent_mm(footnote, footnote, method).equivalent);
    const auto variant = equivalent_mm(footnote, examples::mm_a_ab_star(true), method);
    CHECK_FALSE(variant.equivalent);
    REQUIRE(variant.counterexample);
    CHECK(*variant.counterexample == Word{"b"});
    CHECK(*variant.value_gap == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("equivalent_mm agrees with brute force on random pairs") {
  testing::RandomMachines gen(3);
  const std::vector<std::string> unary{"a"};
  for (int t = 0; t < 10; ++t) {
    const std::size_t n1 = gen.index(1, 3), n2 = gen.index(1, 3);
    const MM1gQFA m1 = gen.mm(n1, unary);
    const MM1gQFA m2 = t % 2 == 0 ? m1 : gen.mm(n2, unary);
    const std::size_t k = combined_bound(m1.dim(), m2.dim());
    const auto span = equivalent_mm(m1, m2);
    const auto brute = k_equivalent_bruteforce(m1, m2, k);
    CHECK(span.equivalent == brute.equivalent);
    CHECK(equivalent_mm(m1, m2, EquivalenceMethod::blm).equivalent == span.equivalent);
    if (!span.equivalent) {
      CHECK(*span.counterexample == *brute.counterexample);
      CHECK(*span.value_gap > span.tolerance);
    }
  }
}

TEST_CASE("k_equivalent_bruteforce") {
  testing::RandomMachines gen(4);
  const MO1gQFA m = gen.mo(2, kAB);
  CHECK(k_equivalent_bruteforce(m, m, 3).equivalent);

  const MO1gQFA all(Alphabet(kAB), gen.density(2), {gen.channel(2), gen.channel(2)}, ComplexMatrix::identity(2));
  const MO1gQFA none(Alphabet(kAB), gen.density(2), {gen.channel(2), gen.channel(2)}, ComplexMatrix::zero(2, 2));
  const auto v0 = k_equivalent_bruteforce(all, none, 0);
  CHECK_FALSE(v0.equivalent);
  CHECK(v0.counterexample->empty());
  CHECK(*v0.value_gap == doctest::Approx(1.0));

  const AnyMachine d1 = reject_all();
  const AnyMachine d2 = length_exactly(3);
  CHECK(k_equivalent_bruteforce(d1, d2, 2).equivalent);
  const auto v3 = k_equivalent_bruteforce(d1, d2, 3);
  CHECK_FALSE(v3.equivalent);
  CHECK(*v3.counterexample == Word{"a", "a", "a"});
  CHECK(k_equivalent_bruteforce(embed(reject_all()), embed(length_exactly(3)), 2).equivalent);
  CHECK(k_equivalent_bruteforce(embed(reject_all()), embed(length_exactly(3)), 3).counterexample->size() == 3);

  // Mixed kinds compare through their word functions.
  CHECK(k_equivalent_bruteforce(AnyMachine{examples::dfa_a_ab_star()}, AnyMachine{embed(examples::dfa_a_ab_star())}, 6)
            .equivalent);
}

TEST_CASE("brute force enumeration guard") {
  testing::RandomMachines gen(5);
  const MO1gQFA m = gen.mo(1, kAB);
  CHECK_THROWS_AS(k_equivalent_bruteforce(m, m, 24), EnumerationGuardError);
  CHECK_NOTHROW(k_equivalent_bruteforce(m, m, 3, kDefaultEquivalenceTolerance, 8));
  CHECK_THROWS_AS(k_equivalent_bruteforce(m, m, 4, kDefaultEquivalenceTolerance, 8), EnumerationGuardError);
  CHECK(word_count_bound(2, 10) == 1024);
  CHECK(word_count_bound(1, 1000) == 1);
  CHECK(word_count_bound(10, 100) == std::numeric_limits<std::uint64_t>::max());
  CHECK(word_count_bound(0, 0) == 1);
}

TEST_CASE("span verdicts match brute force at (n1 + n2)^2, and both methods agree") {
  testing::RandomMachines gen(6);
  for (int t = 0; t < 30; ++t) {
    const bool binary = t % 3 == 0;
    const std::vector<std::string> symbols = binary ? kAB : std::vector<std::string>{"a"};
    const std::size_t n1 = binary ? gen.index(1, 2) : gen.index(1, 3);
    const MO1gQFA m1 = gen.mo(n1, symbols);
    const MO1gQFA m2 = t % 2 == 0 ? conjugated(m1, cycle_permutation(n1)) : gen.mo(binary ? 3 - n1 : gen.index(1, 3), symbols);
    const std::size_t k = combined_bound(m1.dim(), m2.dim());
    const auto brute = k_equivalent_bruteforce(m1, m2, k);
    const auto direct = equivalent_mo(m1, m2, EquivalenceMethod::direct);
    const auto blm = equivalent_mo(m1, m2, EquivalenceMethod::blm);
    CHECK(direct.equivalent == brute.equivalent);
    CHECK(blm.equivalent == direct.equivalent);
    CHECK(direct.basis_size <= k);
    for (const auto* v : {&direct, &blm}) {
      CHECK(v->counterexample.has_value() == !v->equivalent);
      if (v->counterexample) {
        CHECK(*v->counterexample == *brute.counterexample);
        CHECK(std::abs(mo_accept_prob(m1, *v->counterexample) - mo_accept_prob(m2, *v->counterexample)) > v->tolerance);
      }
    }
  }
}

TEST_CASE("brute-force failures persist at larger bounds") {
  testing::RandomMachines gen(7);
  for (int t = 0; t < 20; ++t) {
    const MO1gQFA m1 = gen.mo(2, kAB);
    const MO1gQFA m2 = t % 2 ? embed(length_exactly(2)) : gen.mo(2, kAB);
    for (std::size_t k = 0; k <= 4; ++k) {
      const auto at_k = k_equivalent_bruteforce(m1, m2, k);
      if (at_k.equivalent) continue;
      for (std::size_t later = k; later <= 6; ++later) {
        const auto v = k_equivalent_bruteforce(m1, m2, later);
        REQUIRE_FALSE(v.equivalent);
        CHECK(v.counterexample->size() <= at_k.counterexample->size());
      }
      break;
    }
  }
}
