#pragma once

// Quantum operations in operator-sum form, general one-sided Kraus
// super-operators and projective measurements.

#include <string>
#include <vector>

#include "qfa/linalg.hpp"

namespace qfa {

/// Max-entry tolerance used when validating operations, projectors and states.
inline constexpr double kValidationTolerance = 1e-9;

/// rho -> sum_k A_k rho A_k^dagger with no completeness requirement.
class SuperOperator {
 public:
  explicit SuperOperator(std::vector<ComplexMatrix> kraus);

  std::size_t dim() const { return kraus_.front().rows(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  std::vector<ComplexMatrix> kraus_;
};

struct ValidationReport {
  bool pass = true;
  /// Largest entry of |sum_k E_k^dagger E_k - I|.
  double deviation = 0.0;
  std::string message;
};

/// Operator-sum quantum operation. When `trace_preserving` is set the
/// completeness relation sum_k E_k^dagger E_k = I is enforced at construction.
class QuantumOperation {
 public:
  explicit QuantumOperation(std::vector<ComplexMatrix> kraus, bool trace_preserving = true,
                            double tol = kValidationTolerance);

  std::size_t dim() const { return op_.dim(); }
  const std::vector<ComplexMatrix>& kraus() const { return op_.kraus(); }
  bool trace_preserving() const { return trace_preserving_; }
  const SuperOperator& as_super() const { return op_; }
  operator const SuperOperator&() const { return op_; }  // NOLINT(google-explicit-constructor)

  static QuantumOperation identity(std::size_t n) { return QuantumOperation({ComplexMatrix::identity(n)}); }

 private:
  SuperOperator op_;
  bool trace_preserving_;
};

/// Checks completeness of a Kraus list. Throws DimensionError on inconsistent shapes.
ValidationReport validate_kraus(const std::vector<ComplexMatrix>& kraus, bool trace_preserving,
                                double tol = kValidationTolerance);

ValidationReport validate_operation(const QuantumOperation& op, double tol = kValidationTolerance);

ComplexMatrix apply(const SuperOperator& op, const ComplexMatrix& rho);

/// Kraus products {B_j A_i}: the map rho -> second(first(rho)).
SuperOperator compose(const SuperOperator& second, const SuperOperator& first);
QuantumOperation compose(const QuantumOperation& second, const QuantumOperation& first);

/// n^2 x n^2 matrix M with vec(apply(op, rho)) = M vec(rho) under row-major vec:
/// M = sum_k E_k (x) conj(E_k).
ComplexMatrix superoperator_matrix(const SuperOperator& op);

/// Ordered complete family of orthogonal projectors, e.g. {non, acc, rej}.
class ProjectorSet {
 public:
  ProjectorSet(std::vector<std::string> labels, std::vector<ComplexMatrix> projectors,
               double tol = kValidationTolerance);

  std::size_t size() const { return projectors_.size(); }
  std::size_t dim() const { return projectors_.front().rows(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  const ComplexMatrix& operator[](std::size_t i) const { return projectors_[i]; }
  /// Throws std::out_of_range for an unknown label.
  const ComplexMatrix& get(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
  std::vector<ComplexMatrix> projectors_;
};

/// Throws ValidationError unless p is Hermitian and idempotent within tol.
void require_projector(const ComplexMatrix& p, double tol = kValidationTolerance, const char* what = "projector");

/// Throws ValidationError unless rho is Hermitian, PSD and of unit trace within tol.
void require_density(const ComplexMatrix& rho, double tol = kValidationTolerance, const char* what = "density operator");

struct MeasurementOutcome {
  double probability;
  /// P rho P, not renormalized.
  ComplexMatrix post_state;
};

std::vector<MeasurementOutcome> measure(const ComplexMatrix& rho, const ProjectorSet& projectors);

}  // namespace qfa
