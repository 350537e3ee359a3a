#include "qfa/language_lab.hpp"

#include <stdexcept>
#include <string>

#include "qfa/errors.hpp"

namespace qfa {

namespace {

struct IndexedWitness {
  IndexWord word;
  double value;
};

bool length_lex_less(const IndexWord& a, const IndexWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct Extremes {
  std::optional<IndexedWitness> worst_in;
  std::optional<IndexedWitness> worst_out;
  std::size_t words = 0;
};

Extremes scan(const RecognizingMachine& machine, const DFA& reference, std::size_t max_len, const std::set<Word>& skip,
              std::uint64_t limit) {
  const auto f = make_word_function(std::visit([](const auto& m) { return AnyMachine(m); }, machine));
  const auto& symbols = f->symbols();
  std::vector<std::size_t> dfa_symbol;
  if (reference.alphabet().size() != symbols.size()) throw ValidationError("reference DFA alphabet differs from machine alphabet");
  for (const auto& s : symbols) {
    const auto i = reference.alphabet().find(s);
    if (!i) throw ValidationError("reference DFA alphabet differs from machine alphabet (symbol '" + s + "')");
    dfa_symbol.push_back(*i);
  }
  if (word_count_bound(symbols.size(), max_len) > limit) {
    throw EnumerationGuardError(std::to_string(symbols.size()) + "^" + std::to_string(max_len) +
                                " words exceed the enumeration limit of " + std::to_string(limit));
  }

  Extremes out;
  IndexWord word;
  const auto record = [&](std::optional<IndexedWitness>& slot, double value, bool lower_is_worse) {
    const bool better = !slot || (lower_is_worse ? value < slot->value : value > slot->value) ||
                        (value == slot->value && length_lex_less(word, slot->word));
    if (better) slot = IndexedWitness{word, value};
  };
  const auto visit = [&](const auto& self, const WordFunction::Run& run, std::size_t q) -> void {
    Word decoded;
    if (!skip.empty()) {
      for (auto s : word) decoded.push_back(symbols[s]);
    }
    if (skip.empty() || !skip.contains(decoded)) {
      ++out.words;
      const double value = checked_probability(f->finish(run).real());
      if (reference.accepting()[q]) {
        record(out.worst_in, value, true);
      } else {
        record(out.worst_out, value, false);
      }
    }
    if (word.size() == max_len) return;
    for (std::size_t s = 0; s < symbols.size(); ++s) {
      word.push_back(s);
      self(self, f->step(run, s), reference.next(q, dfa_symbol[s]));
      word.pop_back();
    }
  };
  visit(visit, f->start(), reference.start());
  return out;
}

std::optional<Witness> decode(const std::optional<IndexedWitness>& w, const RecognizingMachine& machine) {
  if (!w) return std::nullopt;
  const Alphabet& alphabet = std::visit([](const auto& m) -> const Alphabet& { return m.alphabet(); }, machine);
  return Witness{alphabet.decode(w->word), w->value};
}

// Empty classes impose no constraint: an absent in-language minimum counts as 1,
// an absent out-of-language maximum as 0.
double in_bound(const Extremes& e) { return e.worst_in ? e.worst_in->value : 1.0; }
double out_bound(const Extremes& e) { return e.worst_out ? e.worst_out->value : 0.0; }

}  // namespace

RecognitionReport check_bounded_error(const RecognizingMachine& machine, const DFA& reference, double lambda,
                                      double epsilon, std::size_t max_len, const std::set<Word>& skip,
                                      std::uint64_t limit) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in (0, 1]");
  const Extremes e = scan(machine, reference, max_len, skip, limit);
  RecognitionReport report;
  report.lambda = lambda;
  report.epsilon = epsilon;
  report.max_len = max_len;
  report.worst_in = decode(e.worst_in, machine);
  report.worst_out = decode(e.worst_out, machine);
  report.words_checked = e.words;
  report.pass = in_bound(e) >= lambda + epsilon && out_bound(e) <= lambda - epsilon;
  return report;
}

MarginScan margin_scan(const RecognizingMachine& machine, const DFA& reference, std::size_t max_len,
                       const std::set<Word>& skip, std::uint64_t limit) {
  const Extremes e = scan(machine, reference, max_len, skip, limit);
  MarginScan out;
  out.worst_in = decode(e.worst_in, machine);
  out.worst_out = decode(e.worst_out, machine);
  const double a = in_bound(e);
  const double b = out_bound(e);
  if (a > b) {
    out.separating = true;
    out.lambda = (a + b) / 2.0;
    out.epsilon = (a - b) / 2.0;
  }
  return out;
}

}  // namespace qfa
