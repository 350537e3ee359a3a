#pragma once

// Constructive translations between machine classes: closure constructions
// (complement, convex combination, product), classical embeddings, the Kraus
// block decomposition behind the MM -> MO-LM compiler, and vectorization into
// bilinear machines.

#include <vector>

#include "qfa/automata.hpp"

namespace qfa {

/// Same machine with P_acc replaced by I - P_acc.
MO1gQFA complement(const MO1gQFA& m);

/// Direct-sum machine accepting with sum_i cs[i] f_i. Weights must be positive
/// and sum to 1; k > 2 machines are folded left-associatively.
MO1gQFA convex_combination(const std::vector<MO1gQFA>& ms, const std::vector<double>& cs);

/// Tensor-product machine accepting with prod_i f_i.
MO1gQFA product(const std::vector<MO1gQFA>& ms);

/// Kraus set {E_i / sqrt(|F|) (+) F_j / sqrt(|E|)}: acts as a (+) b on block-diagonal inputs.
std::vector<ComplexMatrix> direct_sum_kraus(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b);

/// Kraus operators E_ij = sqrt(A_ij) |q_j><q_i| per symbol; exact simulation of p.
MO1gQFA pa_to_mo(const ProbabilisticAutomaton& p);
ProbabilisticAutomaton dfa_to_pa(const DFA& d);

struct KrausBlocks {
  ComplexMatrix non;
  ComplexMatrix acc;
  ComplexMatrix rej;
};

/// e = e P_non + e P_acc + e P_rej. `projectors` must be labelled non, acc, rej.
KrausBlocks decompose_kraus_blocks(const ComplexMatrix& e, const ProjectorSet& projectors);

/// Theta_sigma = F' o F with F_m = E_m^(non) + (P_acc + P_rej) / sqrt(M) and
/// F' = {P_non, P_acc, P_rej}, kept in composed Kraus form (3M operators).
SuperOperator mm_symbol_to_molm(const QuantumOperation& op, const ProjectorSet& projectors);

/// f_out(cent x dollar) = f_m(x) for every word x.
MOLM mm_to_molm(const MM1gQFA& m);

/// n^2-state bilinear machine with A(s) = M_s^T, pi = vec(rho0)^T and
/// eta = vec(P_acc^T), where M_s is the superoperator matrix of symbol s.
BilinearMachine mo_to_blm(const MO1gQFA& m);
/// Symbols of the result are the alphabet followed by both end-markers.
BilinearMachine mo_to_blm(const MOLM& m);

}  // namespace qfa
