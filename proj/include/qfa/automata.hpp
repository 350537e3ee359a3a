#pragma once

// Executable machine models and their word-valued acceptance functions:
// MO-1gQFA, MM-1gQFA, MO-LM, bilinear machines, probabilistic automata, DFA.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfa/linalg.hpp"
#include "qfa/quantum_ops.hpp"

namespace qfa {

/// Left and right end-markers. They never belong to an Alphabet.
inline const std::string kCent = "\xC2\xA2";  // U+00A2
inline const std::string kDollar = "$";

using Word = std::vector<std::string>;
using IndexWord = std::vector<std::size_t>;

/// Concatenates symbols, inserting `sep` between them.
std::string join_word(const Word& word, std::string_view sep = "");

class Alphabet {
 public:
  Alphabet() = default;
  /// Throws ValidationError on duplicates, empty names or end-markers.
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::string& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> find(std::string_view symbol) const;
  /// Throws UnknownSymbolError.
  std::size_t index_of(std::string_view symbol) const;
  IndexWord encode(const Word& word) const;
  Word decode(const IndexWord& word) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

/// Measure-once one-way general QFA: trace-preserving operation per symbol,
/// a single accept/reject measurement at the end.
class MO1gQFA {
 public:
  /// `ops[i]` drives alphabet symbol i. Everything is validated here.
  MO1gQFA(Alphabet alphabet, ComplexMatrix rho0, std::vector<QuantumOperation> ops, ComplexMatrix p_acc);

  std::size_t dim() const { return rho0_.rows(); }
  const Alphabet& alphabet() const { return alphabet_; }
  const ComplexMatrix& rho0() const { return rho0_; }
  const std::vector<QuantumOperation>& ops() const { return ops_; }
  const QuantumOperation& op(std::size_t symbol) const { return ops_.at(symbol); }
  const QuantumOperation& op(std::string_view symbol) const { return ops_[alphabet_.index_of(symbol)]; }
  const ComplexMatrix& p_acc() const { return p_acc_; }

 private:
  Alphabet alphabet_;
  ComplexMatrix rho0_;
  std::vector<QuantumOperation> ops_;
  ComplexMatrix p_acc_;
};

/// Measure-many one-way general QFA. After each symbol (end-markers included)
/// the measurement {P_non, P_acc, P_rej} halts or continues the run.
class MM1gQFA {
 public:
  /// `ops[i]` drives alphabet symbol i; the projector set must carry labels non, acc, rej.
  MM1gQFA(Alphabet alphabet, ComplexMatrix rho0, std::vector<QuantumOperation> ops, QuantumOperation cent_op,
          QuantumOperation dollar_op, ProjectorSet projectors);

  std::size_t dim() const { return rho0_.rows(); }
  const Alphabet& alphabet() const { return alphabet_; }
  const ComplexMatrix& rho0() const { return rho0_; }
  const std::vector<QuantumOperation>& ops() const { return ops_; }
  const QuantumOperation& op(std::size_t symbol) const { return ops_.at(symbol); }
  /// Accepts alphabet symbols and both end-markers.
  const QuantumOperation& op(std::string_view symbol) const;
  const QuantumOperation& cent_op() const { return cent_op_; }
  const QuantumOperation& dollar_op() const { return dollar_op_; }
  const ProjectorSet& projectors() const { return projectors_; }
  const ComplexMatrix& p_non() const { return projectors_[0]; }
  const ComplexMatrix& p_acc() const { return projectors_[1]; }
  const ComplexMatrix& p_rej() const { return projectors_[2]; }

 private:
  Alphabet alphabet_;
  ComplexMatrix rho0_;
  std::vector<QuantumOperation> ops_;
  QuantumOperation cent_op_;
  QuantumOperation dollar_op_;
  ProjectorSet projectors_;
};

/// Measure-once linear machine: an MO machine whose per-symbol maps are
/// arbitrary one-sided Kraus super-operators. End-markers are ordinary input
/// symbols here; words are supplied already wrapped.
class MOLM {
 public:
  MOLM(Alphabet alphabet, ComplexMatrix rho0, std::vector<SuperOperator> ops, SuperOperator cent_op,
       SuperOperator dollar_op, ComplexMatrix p_acc);

  std::size_t dim() const { return rho0_.rows(); }
  const Alphabet& alphabet() const { return alphabet_; }
  const ComplexMatrix& rho0() const { return rho0_; }
  const std::vector<SuperOperator>& ops() const { return ops_; }
  const SuperOperator& cent_op() const { return cent_op_; }
  const SuperOperator& dollar_op() const { return dollar_op_; }
  /// Accepts alphabet symbols and both end-markers.
  const SuperOperator& op(std::string_view symbol) const;
  const ComplexMatrix& p_acc() const { return p_acc_; }

 private:
  Alphabet alphabet_;
  ComplexMatrix rho0_;
  std::vector<SuperOperator> ops_;
  SuperOperator cent_op_;
  SuperOperator dollar_op_;
  ComplexMatrix p_acc_;
};

/// pi A(x1) ... A(xm) eta with unconstrained complex data. Symbol names are
/// free-form, so compiled MO-LMs keep their end-markers.
class BilinearMachine {
 public:
  BilinearMachine(std::vector<std::string> symbols, ComplexMatrix pi, std::vector<ComplexMatrix> mats,
                  ComplexMatrix eta);

  std::size_t states() const { return pi_.cols(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t index_of(std::string_view symbol) const;
  const ComplexMatrix& pi() const { return pi_; }
  const std::vector<ComplexMatrix>& mats() const { return mats_; }
  const ComplexMatrix& eta() const { return eta_; }

 private:
  std::vector<std::string> symbols_;
  ComplexMatrix pi_;
  std::vector<ComplexMatrix> mats_;
  ComplexMatrix eta_;
};

/// Stochastic initial row, row-stochastic transition matrices, 0/1 final column.
class ProbabilisticAutomaton {
 public:
  ProbabilisticAutomaton(Alphabet alphabet, std::vector<double> pi, std::vector<std::vector<std::vector<double>>> mats,
                         std::vector<int> eta);

  std::size_t states() const { return pi_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<double>& pi() const { return pi_; }
  /// mats()[symbol][from][to]
  const std::vector<std::vector<std::vector<double>>>& mats() const { return mats_; }
  const std::vector<int>& eta() const { return eta_; }

 private:
  Alphabet alphabet_;
  std::vector<double> pi_;
  std::vector<std::vector<std::vector<double>>> mats_;
  std::vector<int> eta_;
};

class DFA {
 public:
  /// delta[symbol][state] is the successor state.
  DFA(Alphabet alphabet, std::size_t states, std::size_t start, std::vector<std::vector<std::size_t>> delta,
      std::vector<bool> accepting);

  std::size_t states() const { return states_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t start() const { return start_; }
  const std::vector<std::vector<std::size_t>>& delta() const { return delta_; }
  const std::vector<bool>& accepting() const { return accepting_; }
  std::size_t next(std::size_t state, std::size_t symbol) const { return delta_[symbol][state]; }

 private:
  Alphabet alphabet_;
  std::size_t states_;
  std::size_t start_;
  std::vector<std::vector<std::size_t>> delta_;
  std::vector<bool> accepting_;
};

/// (rho, p_acc, p_rej) carried through an MM run. rho is the unnormalized
/// continuing state.
struct TotalState {
  ComplexMatrix rho;
  double p_acc = 0.0;
  double p_rej = 0.0;
};

/// One application of the evolution operator T_sigma.
TotalState mm_step(const MM1gQFA& m, const TotalState& state, const QuantumOperation& op);

struct MMResult {
  double accept;
  double reject;
  double cont;
};

/// Throws ConsistencyError outside [-1e-6, 1 + 1e-6], then clamps to [0, 1].
double checked_probability(double p);

double mo_accept_prob(const MO1gQFA& m, const Word& word);
/// The machine reads the cent marker, the word, then the dollar marker.
MMResult mm_accept_prob(const MM1gQFA& m, const Word& word);
/// `word` must already carry its end-markers.
double molm_accept_prob(const MOLM& m, const Word& word);
Complex blm_value(const BilinearMachine& b, const Word& word);
double pa_accept_prob(const ProbabilisticAutomaton& p, const Word& word);
bool dfa_accepts(const DFA& d, const Word& word);

/// Same data viewed as a bilinear machine; pa_accept_prob runs through this path.
BilinearMachine pa_as_blm(const ProbabilisticAutomaton& p);

using AnyMachine = std::variant<MO1gQFA, MM1gQFA, MOLM, BilinearMachine, ProbabilisticAutomaton, DFA>;

/// mo1gqfa, mm1gqfa, molm, blm, pa or dfa.
std::string kind_name(const AnyMachine& m);

/// Incremental evaluation of a machine's word function, so enumerations can
/// share work between words with a common prefix. Symbols are indices into
/// symbols(). Values are raw: no clamping is applied.
class WordFunction {
 public:
  struct Run {
    ComplexMatrix state;
    double accepted = 0.0;
    double rejected = 0.0;
  };

  virtual ~WordFunction() = default;
  virtual const std::vector<std::string>& symbols() const = 0;
  virtual Run start() const = 0;
  virtual Run step(const Run& run, std::size_t symbol) const = 0;
  virtual Complex finish(const Run& run) const = 0;

  Complex evaluate(const IndexWord& word) const;
};

/// Input symbols are the alphabet for MO, MM, PA and DFA machines (MM words are
/// wrapped in end-markers internally), the alphabet plus both end-markers for an
/// MO-LM, and the machine's own symbol list for a bilinear machine.
std::unique_ptr<WordFunction> make_word_function(AnyMachine machine);

}  // namespace qfa
