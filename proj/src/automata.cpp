#include "qfa/automata.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qfa/errors.hpp"

namespace qfa {

namespace {

constexpr double kProbabilitySlack = 1e-6;

void require_dim(const ComplexMatrix& m, std::size_t n, const std::string& what) {
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError(what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
}

void require_op_count(std::size_t ops, const Alphabet& alphabet) {
  if (ops != alphabet.size()) {
    throw ValidationError("expected one operation per alphabet symbol (" + std::to_string(alphabet.size()) +
                          "), got " + std::to_string(ops));
  }
}

void require_trace_preserving(const QuantumOperation& op, const std::string& what) {
  if (!op.trace_preserving()) throw ValidationError(what + ": operation must be trace-preserving");
}

}  // namespace

std::string join_word(const Word& word, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += sep;
    out += word[i];
  }
  return out;
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw ValidationError("Alphabet: empty symbol name");
    if (s == kCent || s == kDollar) throw ValidationError("Alphabet: end-marker " + s + " cannot be an input symbol");
    if (!seen.insert(s).second) throw ValidationError("Alphabet: duplicate symbol " + s);
  }
}

std::optional<std::size_t> Alphabet::find(std::string_view symbol) const {
  const auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - symbols_.begin());
}

std::size_t Alphabet::index_of(std::string_view symbol) const {
  if (auto i = find(symbol)) return *i;
  throw UnknownSymbolError("unknown symbol '" + std::string(symbol) + "'");
}

IndexWord Alphabet::encode(const Word& word) const {
  IndexWord out;
  out.reserve(word.size());
  for (const auto& s : word) out.push_back(index_of(s));
  return out;
}

Word Alphabet::decode(const IndexWord& word) const {
  Word out;
  out.reserve(word.size());
  for (auto i : word) out.push_back(symbols_.at(i));
  return out;
}

MO1gQFA::MO1gQFA(Alphabet alphabet, ComplexMatrix rho0, std::vector<QuantumOperation> ops, ComplexMatrix p_acc)
    : alphabet_(std::move(alphabet)), rho0_(std::move(rho0)), ops_(std::move(ops)), p_acc_(std::move(p_acc)) {
  require_density(rho0_, kValidationTolerance, "MO1gQFA rho0");
  require_op_count(ops_.size(), alphabet_);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    require_dim(ops_[i].kraus().front(), dim(), "MO1gQFA operation for '" + alphabet_[i] + "'");
    require_trace_preserving(ops_[i], "MO1gQFA operation for '" + alphabet_[i] + "'");
  }
  require_dim(p_acc_, dim(), "MO1gQFA p_acc");
  require_projector(p_acc_, kValidationTolerance, "MO1gQFA p_acc");
}

MM1gQFA::MM1gQFA(Alphabet alphabet, ComplexMatrix rho0, std::vector<QuantumOperation> ops, QuantumOperation cent_op,
                 QuantumOperation dollar_op, ProjectorSet projectors)
    : alphabet_(std::move(alphabet)),
      rho0_(std::move(rho0)),
      ops_(std::move(ops)),
      cent_op_(std::move(cent_op)),
      dollar_op_(std::move(dollar_op)),
      projectors_(std::move(projectors)) {
  require_density(rho0_, kValidationTolerance, "MM1gQFA rho0");
  require_op_count(ops_.size(), alphabet_);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    require_dim(ops_[i].kraus().front(), dim(), "MM1gQFA operation for '" + alphabet_[i] + "'");
    require_trace_preserving(ops_[i], "MM1gQFA operation for '" + alphabet_[i] + "'");
  }
  require_dim(cent_op_.kraus().front(), dim(), "MM1gQFA cent operation");
  require_dim(dollar_op_.kraus().front(), dim(), "MM1gQFA dollar operation");
  require_trace_preserving(cent_op_, "MM1gQFA cent operation");
  require_trace_preserving(dollar_op_, "MM1gQFA dollar operation");
  if (projectors_.labels() != std::vector<std::string>{"non", "acc", "rej"}) {
    throw ValidationError("MM1gQFA: projector labels must be non, acc, rej in that order");
  }
  if (projectors_.dim() != dim()) throw DimensionError("MM1gQFA: projector dimension differs from state dimension");
  if (max_abs_diff(p_non() * rho0_ * p_non(), rho0_) > kValidationTolerance) {
    throw ValidationError("MM1gQFA: rho0 is not supported on the non-halting subspace");
  }
}

const QuantumOperation& MM1gQFA::op(std::string_view symbol) const {
  if (symbol == kCent) return cent_op_;
  if (symbol == kDollar) return dollar_op_;
  return ops_[alphabet_.index_of(symbol)];
}

MOLM::MOLM(Alphabet alphabet, ComplexMatrix rho0, std::vector<SuperOperator> ops, SuperOperator cent_op,
           SuperOperator dollar_op, ComplexMatrix p_acc)
    : alphabet_(std::move(alphabet)),
      rho0_(std::move(rho0)),
      ops_(std::move(ops)),
      cent_op_(std::move(cent_op)),
      dollar_op_(std::move(dollar_op)),
      p_acc_(std::move(p_acc)) {
  require_density(rho0_, kValidationTolerance, "MOLM rho0");
  require_op_count(ops_.size(), alphabet_);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    require_dim(ops_[i].kraus().front(), dim(), "MOLM operation for '" + alphabet_[i] + "'");
  }
  require_dim(cent_op_.kraus().front(), dim(), "MOLM cent operation");
  require_dim(dollar_op_.kraus().front(), dim(), "MOLM dollar operation");
  require_dim(p_acc_, dim(), "MOLM p_acc");
  require_projector(p_acc_, kValidationTolerance, "MOLM p_acc");
}

const SuperOperator& MOLM::op(std::string_view symbol) const {
  if (symbol == kCent) return cent_op_;
  if (symbol == kDollar) return dollar_op_;
  return ops_[alphabet_.index_of(symbol)];
}

BilinearMachine::BilinearMachine(std::vector<std::string> symbols, ComplexMatrix pi, std::vector<ComplexMatrix> mats,
                                 ComplexMatrix eta)
    : symbols_(std::move(symbols)), pi_(std::move(pi)), mats_(std::move(mats)), eta_(std::move(eta)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty() || !seen.insert(s).second) throw ValidationError("BilinearMachine: empty or duplicate symbol");
  }
  if (pi_.rows() != 1) throw DimensionError("BilinearMachine: pi must be a row vector");
  const std::size_t n = pi_.cols();
  if (eta_.rows() != n || eta_.cols() != 1) throw DimensionError("BilinearMachine: eta must be an n x 1 column");
  if (mats_.size() != symbols_.size()) throw ValidationError("BilinearMachine: one matrix per symbol required");
  for (std::size_t i = 0; i < mats_.size(); ++i) require_dim(mats_[i], n, "BilinearMachine matrix for '" + symbols_[i] + "'");
}

std::size_t BilinearMachine::index_of(std::string_view symbol) const {
  const auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) throw UnknownSymbolError("unknown symbol '" + std::string(symbol) + "'");
  return static_cast<std::size_t>(it - symbols_.begin());
}

ProbabilisticAutomaton::ProbabilisticAutomaton(Alphabet alphabet, std::vector<double> pi,
                                               std::vector<std::vector<std::vector<double>>> mats, std::vector<int> eta)
    : alphabet_(std::move(alphabet)), pi_(std::move(pi)), mats_(std::move(mats)), eta_(std::move(eta)) {
  constexpr double tol = kValidationTolerance;
  const std::size_t n = pi_.size();
  if (n == 0) throw ValidationError("ProbabilisticAutomaton: no states");
  double total = 0.0;
  for (double p : pi_) {
    if (!(p >= 0.0)) throw ValidationError("ProbabilisticAutomaton: negative initial probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tol) throw ValidationError("ProbabilisticAutomaton: initial distribution does not sum to 1");
  require_op_count(mats_.size(), alphabet_);
  for (std::size_t s = 0; s < mats_.size(); ++s) {
    if (mats_[s].size() != n) throw DimensionError("ProbabilisticAutomaton: matrix for '" + alphabet_[s] + "' has wrong row count");
    for (const auto& row : mats_[s]) {
      if (row.size() != n) throw DimensionError("ProbabilisticAutomaton: matrix for '" + alphabet_[s] + "' has wrong column count");
      double sum = 0.0;
      for (double p : row) {
        if (!(p >= 0.0)) throw ValidationError("ProbabilisticAutomaton: negative transition probability");
        sum += p;
      }
      if (std::abs(sum - 1.0) > tol) {
        throw ValidationError("ProbabilisticAutomaton: a row of the matrix for '" + alphabet_[s] + "' does not sum to 1");
      }
    }
  }
  if (eta_.size() != n) throw DimensionError("ProbabilisticAutomaton: eta has wrong length");
  for (int e : eta_) {
    if (e != 0 && e != 1) throw ValidationError("ProbabilisticAutomaton: eta entries must be 0 or 1");
  }
}

DFA::DFA(Alphabet alphabet, std::size_t states, std::size_t start, std::vector<std::vector<std::size_t>> delta,
         std::vector<bool> accepting)
    : alphabet_(std::move(alphabet)),
      states_(states),
      start_(start),
      delta_(std::move(delta)),
      accepting_(std::move(accepting)) {
  if (states_ == 0) throw ValidationError("DFA: no states");
  if (start_ >= states_) throw ValidationError("DFA: start state out of range");
  if (accepting_.size() != states_) throw ValidationError("DFA: accepting flags must cover every state");
  require_op_count(delta_.size(), alphabet_);
  for (std::size_t s = 0; s < delta_.size(); ++s) {
    if (delta_[s].size() != states_) throw ValidationError("DFA: transition table for '" + alphabet_[s] + "' is not total");
    for (auto q : delta_[s]) {
      if (q >= states_) throw ValidationError("DFA: transition target out of range");
    }
  }
}

double checked_probability(double p) {
  if (!std::isfinite(p) || p < -kProbabilitySlack || p > 1.0 + kProbabilitySlack) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "probability " << p << " is outside [0, 1]";
    throw ConsistencyError(msg.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

TotalState mm_step(const MM1gQFA& m, const TotalState& state, const QuantumOperation& op) {
  const ComplexMatrix evolved = apply(op, state.rho);
  auto outcomes = measure(evolved, m.projectors());
  return {std::move(outcomes[0].post_state), state.p_acc + outcomes[1].probability,
          state.p_rej + outcomes[2].probability};
}

double mo_accept_prob(const MO1gQFA& m, const Word& word) {
  ComplexMatrix rho = m.rho0();
  for (const auto& s : word) rho = apply(m.op(s), rho);
  return checked_probability(trace(m.p_acc() * rho).real());
}

MMResult mm_accept_prob(const MM1gQFA& m, const Word& word) {
  for (const auto& s : word) (void)m.alphabet().index_of(s);
  TotalState state{m.rho0()};
  state = mm_step(m, state, m.cent_op());
  for (const auto& s : word) state = mm_step(m, state, m.op(s));
  state = mm_step(m, state, m.dollar_op());
  return {checked_probability(state.p_acc), checked_probability(state.p_rej),
          checked_probability(trace(state.rho).real())};
}

double molm_accept_prob(const MOLM& m, const Word& word) {
  ComplexMatrix rho = m.rho0();
  for (const auto& s : word) rho = apply(m.op(s), rho);
  return trace(rho * m.p_acc()).real();
}

Complex blm_value(const BilinearMachine& b, const Word& word) {
  ComplexMatrix v = b.pi();
  for (const auto& s : word) v = v * b.mats()[b.index_of(s)];
  return (v * b.eta())(0, 0);
}

BilinearMachine pa_as_blm(const ProbabilisticAutomaton& p) {
  const std::size_t n = p.states();
  ComplexMatrix pi(1, n);
  ComplexMatrix eta(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    pi(0, i) = p.pi()[i];
    eta(i, 0) = static_cast<double>(p.eta()[i]);
  }
  std::vector<ComplexMatrix> mats;
  for (const auto& a : p.mats()) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i][j];
    mats.push_back(std::move(m));
  }
  return {p.alphabet().symbols(), std::move(pi), std::move(mats), std::move(eta)};
}

double pa_accept_prob(const ProbabilisticAutomaton& p, const Word& word) {
  for (const auto& s : word) (void)p.alphabet().index_of(s);
  return checked_probability(blm_value(pa_as_blm(p), word).real());
}

bool dfa_accepts(const DFA& d, const Word& word) {
  std::size_t q = d.start();
  for (const auto& s : word) q = d.next(q, d.alphabet().index_of(s));
  return d.accepting()[q];
}

std::string kind_name(const AnyMachine& m) {
  struct Visitor {
    std::string operator()(const MO1gQFA&) const { return "mo1gqfa"; }
    std::string operator()(const MM1gQFA&) const { return "mm1gqfa"; }
    std::string operator()(const MOLM&) const { return "molm"; }
    std::string operator()(const BilinearMachine&) const { return "blm"; }
    std::string operator()(const ProbabilisticAutomaton&) const { return "pa"; }
    std::string operator()(const DFA&) const { return "dfa"; }
  };
  return std::visit(Visitor{}, m);
}

Complex WordFunction::evaluate(const IndexWord& word) const {
  Run run = start();
  for (auto s : word) run = step(run, s);
  return finish(run);
}

namespace {

class MOWordFunction final : public WordFunction {
 public:
  explicit MOWordFunction(MO1gQFA m) : m_(std::move(m)) {}
  const std::vector<std::string>& symbols() const override { return m_.alphabet().symbols(); }
  Run start() const override { return {m_.rho0()}; }
  Run step(const Run& run, std::size_t symbol) const override { return {apply(m_.op(symbol), run.state)}; }
  Complex finish(const Run& run) const override { return trace(m_.p_acc() * run.state); }

 private:
  MO1gQFA m_;
};

class MMWordFunction final : public WordFunction {
 public:
  explicit MMWordFunction(MM1gQFA m) : m_(std::move(m)) {}
  const std::vector<std::string>& symbols() const override { return m_.alphabet().symbols(); }
  Run start() const override { return advance({m_.rho0()}, m_.cent_op()); }
  Run step(const Run& run, std::size_t symbol) const override { return advance(run, m_.op(symbol)); }
  Complex finish(const Run& run) const override { return advance(run, m_.dollar_op()).accepted; }

 private:
  Run advance(const Run& run, const QuantumOperation& op) const {
    auto next = mm_step(m_, TotalState{run.state, run.accepted, run.rejected}, op);
    return {std::move(next.rho), next.p_acc, next.p_rej};
  }
  MM1gQFA m_;
};

class MOLMWordFunction final : public WordFunction {
 public:
  explicit MOLMWordFunction(MOLM m) : m_(std::move(m)), symbols_(m_.alphabet().symbols()) {
    symbols_.push_back(kCent);
    symbols_.push_back(kDollar);
  }
  const std::vector<std::string>& symbols() const override { return symbols_; }
  Run start() const override { return {m_.rho0()}; }
  Run step(const Run& run, std::size_t symbol) const override {
    const std::size_t sigma = m_.alphabet().size();
    const SuperOperator& op = symbol < sigma ? m_.ops()[symbol] : (symbol == sigma ? m_.cent_op() : m_.dollar_op());
    return {apply(op, run.state)};
  }
  Complex finish(const Run& run) const override { return trace(run.state * m_.p_acc()); }

 private:
  MOLM m_;
  std::vector<std::string> symbols_;
};

class BLMWordFunction final : public WordFunction {
 public:
  explicit BLMWordFunction(BilinearMachine b) : b_(std::move(b)) {}
  const std::vector<std::string>& symbols() const override { return b_.symbols(); }
  Run start() const override { return {b_.pi()}; }
  Run step(const Run& run, std::size_t symbol) const override { return {run.state * b_.mats().at(symbol)}; }
  Complex finish(const Run& run) const override { return (run.state * b_.eta())(0, 0); }

 private:
  BilinearMachine b_;
};

class DFAWordFunction final : public WordFunction {
 public:
  explicit DFAWordFunction(DFA d) : d_(std::move(d)) {}
  const std::vector<std::string>& symbols() const override { return d_.alphabet().symbols(); }
  Run start() const override { return {indicator(d_.start())}; }
  Run step(const Run& run, std::size_t symbol) const override { return {indicator(d_.next(current(run), symbol))}; }
  Complex finish(const Run& run) const override { return d_.accepting()[current(run)] ? 1.0 : 0.0; }

 private:
  ComplexMatrix indicator(std::size_t q) const {
    ComplexMatrix v(1, d_.states());
    v(0, q) = 1.0;
    return v;
  }
  std::size_t current(const Run& run) const {
    const auto e = run.state.entries();
    return static_cast<std::size_t>(std::find(e.begin(), e.end(), Complex{1.0}) - e.begin());
  }
  DFA d_;
};

}  // namespace

std::unique_ptr<WordFunction> make_word_function(AnyMachine machine) {
  struct Visitor {
    std::unique_ptr<WordFunction> operator()(MO1gQFA& m) const { return std::make_unique<MOWordFunction>(std::move(m)); }
    std::unique_ptr<WordFunction> operator()(MM1gQFA& m) const { return std::make_unique<MMWordFunction>(std::move(m)); }
    std::unique_ptr<WordFunction> operator()(MOLM& m) const { return std::make_unique<MOLMWordFunction>(std::move(m)); }
    std::unique_ptr<WordFunction> operator()(BilinearMachine& b) const {
      return std::make_unique<BLMWordFunction>(std::move(b));
    }
    std::unique_ptr<WordFunction> operator()(ProbabilisticAutomaton& p) const {
      return std::make_unique<BLMWordFunction>(pa_as_blm(p));
    }
    std::unique_ptr<WordFunction> operator()(DFA& d) const { return std::make_unique<DFAWordFunction>(std::move(d)); }
  };
  return std::visit(Visitor{}, machine);
}

}  // namespace qfa
