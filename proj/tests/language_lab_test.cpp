#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qfa/errors.hpp"
#include "qfa/examples.hpp"
#include "qfa/language_lab.hpp"
#include "qfa/transforms.hpp"
#include "support/random_machines.hpp"

using namespace qfa;

namespace {

const std::set<Word> kSkipEmpty{Word{}};

MO1gQFA exact_embedding(const DFA& d) { return pa_to_mo(dfa_to_pa(d)); }

}  // namespace

TEST_CASE("exact DFA embedding recognizes with certainty") {
  const DFA d = examples::dfa_a_ab_star();
  const auto report = check_bounded_error(exact_embedding(d), d, 0.5, 0.5, 6);
  CHECK(report.pass);
  REQUIRE(report.worst_in);
  REQUIRE(report.worst_out);
  CHECK(report.worst_in->value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.worst_out->value == doctest::Approx(0.0));
  CHECK(report.words_checked == 127);
  CHECK(report.max_len == 6);

  const MO1gQFA m = exact_embedding(d);
  for (const auto& w : testing::all_words({"a", "b"}, 6)) {
    const double f = mo_accept_prob(m, w);
    CHECK(std::min(std::abs(f), std::abs(f - 1.0)) <= 1e-12);
  }

  const auto scan = margin_scan(exact_embedding(d), d, 6);
  CHECK(scan.separating);
  CHECK(scan.lambda == doctest::Approx(0.5));
  CHECK(scan.epsilon == doctest::Approx(0.5));
}

TEST_CASE("measure-many machine for a{a,b}*") {
  const MM1gQFA m = examples::mm_a_ab_star();
  const DFA d = examples::dfa_a_ab_star();

  const auto report = check_bounded_error(m, d, 0.25, 0.24, 7, kSkipEmpty);
  CHECK(report.pass);
  REQUIRE(report.worst_in);
  CHECK(report.worst_in->value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.worst_in->word == Word{"a"});
  CHECK(report.words_checked == 254);

  const auto with_empty = check_bounded_error(m, d, 0.25, 0.24, 7);
  CHECK_FALSE(with_empty.pass);
  REQUIRE(with_empty.worst_out);
  CHECK(with_empty.worst_out->word.empty());
  CHECK(with_empty.worst_out->value == doctest::Approx(1.0).epsilon(1e-12));

  const auto scan = margin_scan(m, d, 7, kSkipEmpty);
  CHECK(scan.separating);
  CHECK(scan.lambda == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(scan.epsilon == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_FALSE(margin_scan(m, d, 7).separating);
}

TEST_CASE("all-accept machine does not separate") {
  testing::RandomMachines gen(1);
  const MO1gQFA all(Alphabet({"a", "b"}), gen.density(2), {gen.channel(2), gen.channel(2)}, ComplexMatrix::identity(2));
  const auto scan = margin_scan(all, examples::dfa_a_ab_star(), 4);
  CHECK_FALSE(scan.separating);
  REQUIRE(scan.worst_out);
  CHECK(scan.worst_out->word.empty());
}

TEST_CASE("argument checks") {
  const DFA d = examples::dfa_a_ab_star();
  const MO1gQFA m = exact_embedding(d);
  CHECK_THROWS_AS(check_bounded_error(m, d, 0.5, 0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(check_bounded_error(m, d, 0.0, 0.1, 3), std::invalid_argument);
  CHECK_THROWS_AS(check_bounded_error(m, d, 1.5, 0.1, 3), std::invalid_argument);
  CHECK_THROWS_AS(check_bounded_error(m, d, 0.5, 0.5, 24), EnumerationGuardError);
  CHECK_THROWS_AS(margin_scan(m, d, 24), EnumerationGuardError);
  const DFA unary(Alphabet({"a"}), 1, 0, {{0}}, {true});
  CHECK_THROWS_AS(check_bounded_error(m, unary, 0.5, 0.5, 3), ValidationError);
}

TEST_CASE("pass agrees with the margin scan and extremes are reproducible") {
  testing::RandomMachines gen(2);
  const DFA d = examples::dfa_a_ab_star();
  for (int t = 0; t < 20; ++t) {
    const RecognizingMachine m = t % 2 ? RecognizingMachine(gen.mm(gen.index(2, 3), {"a", "b"}))
                                       : RecognizingMachine(gen.mo(gen.index(1, 3), {"a", "b"}));
    const auto scan = margin_scan(m, d, 4);
    for (double lambda : {0.1, 0.3, 0.5, 0.7}) {
      for (double epsilon : {0.01, 0.05, 0.2}) {
        const auto report = check_bounded_error(m, d, lambda, epsilon, 4);
        const bool predicted =
            scan.separating && scan.epsilon >= epsilon && std::abs(scan.lambda - lambda) <= scan.epsilon - epsilon;
        CHECK(report.pass == predicted);
      }
    }
    const auto again = margin_scan(m, d, 4);
    CHECK(again.worst_in->word == scan.worst_in->word);
    CHECK(again.worst_out->word == scan.worst_out->word);
  }

  // Margins constructed around a known separating machine.
  const MM1gQFA footnote = examples::mm_a_ab_star();
  const auto scan = margin_scan(footnote, d, 5, kSkipEmpty);
  CHECK(check_bounded_error(footnote, d, scan.lambda, scan.epsilon - 1e-12, 5, kSkipEmpty).pass);
  CHECK_FALSE(check_bounded_error(footnote, d, scan.lambda, scan.epsilon + 0.01, 5, kSkipEmpty).pass);
}
