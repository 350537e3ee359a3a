#include "qfa/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "qfa/errors.hpp"

namespace qfa {

namespace {

void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* what) {
  auto sa = a.symbols();
  auto sb = b.symbols();
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) throw ValidationError(std::string(what) + ": machines have different alphabets");
}

/// Operations of `m` re-indexed to follow `order`.
std::vector<const QuantumOperation*> ops_in_order(const MO1gQFA& m, const Alphabet& order) {
  std::vector<const QuantumOperation*> out;
  for (const auto& s : order.symbols()) out.push_back(&m.op(s));
  return out;
}

MO1gQFA mix_pair(const MO1gQFA& a, const MO1gQFA& b, double ca, double cb) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "convex_combination");
  const auto b_ops = ops_in_order(b, a.alphabet());
  std::vector<QuantumOperation> ops;
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
    ops.emplace_back(direct_sum_kraus(a.op(s).kraus(), b_ops[s]->kraus()));
  }
  return {a.alphabet(), direct_sum(ca * a.rho0(), cb * b.rho0()), std::move(ops), direct_sum(a.p_acc(), b.p_acc())};
}

MO1gQFA tensor_pair(const MO1gQFA& a, const MO1gQFA& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "product");
  const auto b_ops = ops_in_order(b, a.alphabet());
  std::vector<QuantumOperation> ops;
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
    std::vector<ComplexMatrix> kraus;
    for (const auto& e : a.op(s).kraus())
      for (const auto& f : b_ops[s]->kraus()) kraus.push_back(tensor(e, f));
    ops.emplace_back(std::move(kraus));
  }
  return {a.alphabet(), tensor(a.rho0(), b.rho0()), std::move(ops), tensor(a.p_acc(), b.p_acc())};
}

ComplexMatrix scaled(const ComplexMatrix& m, std::size_t count) {
  return (1.0 / std::sqrt(static_cast<double>(count))) * m;
}

}  // namespace

MO1gQFA complement(const MO1gQFA& m) {
  return {m.alphabet(), m.rho0(), m.ops(), ComplexMatrix::identity(m.dim()) - m.p_acc()};
}

std::vector<ComplexMatrix> direct_sum_kraus(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
  std::vector<ComplexMatrix> out;
  out.reserve(a.size() * b.size());
  for (const auto& e : a)
    for (const auto& f : b) out.push_back(direct_sum(scaled(e, b.size()), scaled(f, a.size())));
  return out;
}

MO1gQFA convex_combination(const std::vector<MO1gQFA>& ms, const std::vector<double>& cs) {
  if (ms.empty()) throw ValidationError("convex_combination: no machines");
  if (ms.size() != cs.size()) throw ValidationError("convex_combination: one weight per machine required");
  double total = 0.0;
  for (double c : cs) {
    if (!(c > 0.0)) throw ValidationError("convex_combination: weights must be positive");
    total += c;
  }
  if (std::abs(total - 1.0) > kValidationTolerance) throw ValidationError("convex_combination: weights must sum to 1");

  MO1gQFA merged = ms.front();
  double mass = cs.front();
  for (std::size_t i = 1; i < ms.size(); ++i) {
    const double next = mass + cs[i];
    merged = mix_pair(merged, ms[i], mass / next, cs[i] / next);
    mass = next;
  }
  return merged;
}

MO1gQFA product(const std::vector<MO1gQFA>& ms) {
  if (ms.empty()) throw ValidationError("product: no machines");
  MO1gQFA merged = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) merged = tensor_pair(merged, ms[i]);
  return merged;
}

MO1gQFA pa_to_mo(const ProbabilisticAutomaton& p) {
  const std::size_t n = p.states();
  std::vector<Complex> initial(p.pi().begin(), p.pi().end());
  std::vector<Complex> accepting(p.eta().begin(), p.eta().end());
  std::vector<QuantumOperation> ops;
  for (const auto& a : p.mats()) {
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (a[i][j] == 0.0) continue;
        kraus.push_back(std::sqrt(a[i][j]) * ComplexMatrix::basis_op(n, j, i));
      }
    ops.emplace_back(std::move(kraus));
  }
  return {p.alphabet(), ComplexMatrix::diagonal(initial), std::move(ops), ComplexMatrix::diagonal(accepting)};
}

ProbabilisticAutomaton dfa_to_pa(const DFA& d) {
  const std::size_t n = d.states();
  std::vector<double> pi(n, 0.0);
  pi[d.start()] = 1.0;
  std::vector<std::vector<std::vector<double>>> mats;
  for (const auto& row : d.delta()) {
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t q = 0; q < n; ++q) a[q][row[q]] = 1.0;
    mats.push_back(std::move(a));
  }
  std::vector<int> eta(n);
  for (std::size_t q = 0; q < n; ++q) eta[q] = d.accepting()[q] ? 1 : 0;
  return {d.alphabet(), std::move(pi), std::move(mats), std::move(eta)};
}

KrausBlocks decompose_kraus_blocks(const ComplexMatrix& e, const ProjectorSet& projectors) {
  if (projectors.labels() != std::vector<std::string>{"non", "acc", "rej"}) {
    throw ValidationError("decompose_kraus_blocks: projector labels must be non, acc, rej");
  }
  if (e.cols() != projectors.dim()) throw DimensionError("decompose_kraus_blocks: operator and projectors differ in dimension");
  return {e * projectors[0], e * projectors[1], e * projectors[2]};
}

SuperOperator mm_symbol_to_molm(const QuantumOperation& op, const ProjectorSet& projectors) {
  const ComplexMatrix halting = scaled(projectors[1] + projectors[2], op.kraus().size());
  std::vector<ComplexMatrix> f;
  f.reserve(op.kraus().size());
  for (const auto& e : op.kraus()) f.push_back(decompose_kraus_blocks(e, projectors).non + halting);
  const SuperOperator measurement(projectors.projectors());
  return compose(measurement, SuperOperator(std::move(f)));
}

MOLM mm_to_molm(const MM1gQFA& m) {
  std::vector<SuperOperator> ops;
  for (const auto& op : m.ops()) ops.push_back(mm_symbol_to_molm(op, m.projectors()));
  return {m.alphabet(),
          m.rho0(),
          std::move(ops),
          mm_symbol_to_molm(m.cent_op(), m.projectors()),
          mm_symbol_to_molm(m.dollar_op(), m.projectors()),
          m.p_acc()};
}

namespace {

BilinearMachine vectorize(std::vector<std::string> symbols, const std::vector<const SuperOperator*>& ops,
                          const ComplexMatrix& rho0, const ComplexMatrix& p_acc) {
  std::vector<ComplexMatrix> mats;
  mats.reserve(ops.size());
  for (const auto* op : ops) mats.push_back(transpose(superoperator_matrix(*op)));
  return {std::move(symbols), transpose(vec(rho0)), std::move(mats), vec(transpose(p_acc))};
}

}  // namespace

BilinearMachine mo_to_blm(const MO1gQFA& m) {
  std::vector<const SuperOperator*> ops;
  for (const auto& op : m.ops()) ops.push_back(&op.as_super());
  return vectorize(m.alphabet().symbols(), ops, m.rho0(), m.p_acc());
}

BilinearMachine mo_to_blm(const MOLM& m) {
  std::vector<const SuperOperator*> ops;
  for (const auto& op : m.ops()) ops.push_back(&op);
  ops.push_back(&m.cent_op());
  ops.push_back(&m.dollar_op());
  auto symbols = m.alphabet().symbols();
  symbols.push_back(kCent);
  symbols.push_back(kDollar);
  return vectorize(std::move(symbols), ops, m.rho0(), m.p_acc());
}

}  // namespace qfa
