#include "qfa/quantum_ops.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qfa/errors.hpp"

namespace qfa {

namespace {

void require_uniform_square(const std::vector<ComplexMatrix>& mats, const char* what) {
  if (mats.empty()) throw ValidationError(std::string(what) + ": empty operator list");
  const std::size_t n = mats.front().rows();
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) {
      throw DimensionError(std::string(what) + ": operators must all be " + std::to_string(n) + "x" +
                           std::to_string(n));
    }
  }
}

void require_dim(const SuperOperator& op, const ComplexMatrix& rho) {
  if (rho.rows() != op.dim() || rho.cols() != op.dim()) {
    throw DimensionError("apply: state is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                         ", operation acts on dimension " + std::to_string(op.dim()));
  }
}

}  // namespace

SuperOperator::SuperOperator(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  require_uniform_square(kraus_, "SuperOperator");
}

ValidationReport validate_kraus(const std::vector<ComplexMatrix>& kraus, bool trace_preserving, double tol) {
  require_uniform_square(kraus, "validate_kraus");
  const std::size_t n = kraus.front().rows();
  ComplexMatrix completeness(n, n);
  for (const auto& e : kraus) completeness += dagger(e) * e;
  ValidationReport report;
  report.deviation = max_abs_diff(completeness, ComplexMatrix::identity(n));
  if (trace_preserving && report.deviation > tol) {
    report.pass = false;
    std::ostringstream msg;
    msg << "sum of E^dagger E deviates from identity by " << report.deviation << " (tolerance " << tol << ")";
    report.message = msg.str();
  }
  return report;
}

QuantumOperation::QuantumOperation(std::vector<ComplexMatrix> kraus, bool trace_preserving, double tol)
    : op_(std::move(kraus)), trace_preserving_(trace_preserving) {
  if (trace_preserving_) {
    const auto report = validate_kraus(op_.kraus(), true, tol);
    if (!report.pass) throw ValidationError("QuantumOperation: " + report.message);
  }
}

ValidationReport validate_operation(const QuantumOperation& op, double tol) {
  return validate_kraus(op.kraus(), op.trace_preserving(), tol);
}

ComplexMatrix apply(const SuperOperator& op, const ComplexMatrix& rho) {
  require_dim(op, rho);
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const auto& e : op.kraus()) out += e * rho * dagger(e);
  return out;
}

SuperOperator compose(const SuperOperator& second, const SuperOperator& first) {
  if (second.dim() != first.dim()) throw DimensionError("compose: operations act on different dimensions");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(second.kraus().size() * first.kraus().size());
  for (const auto& b : second.kraus())
    for (const auto& a : first.kraus()) kraus.push_back(b * a);
  return SuperOperator(std::move(kraus));
}

QuantumOperation compose(const QuantumOperation& second, const QuantumOperation& first) {
  auto composed = compose(second.as_super(), first.as_super());
  const bool tp = second.trace_preserving() && first.trace_preserving();
  return QuantumOperation(composed.kraus(), tp);
}

ComplexMatrix superoperator_matrix(const SuperOperator& op) {
  const std::size_t n = op.dim();
  ComplexMatrix m(n * n, n * n);
  for (const auto& e : op.kraus()) m += tensor(e, conjugate(e));
  return m;
}

void require_projector(const ComplexMatrix& p, double tol, const char* what) {
  if (!p.is_square()) throw DimensionError(std::string(what) + ": not square");
  if (!is_hermitian(p, tol)) throw ValidationError(std::string(what) + ": not Hermitian");
  if (max_abs_diff(p * p, p) > tol) throw ValidationError(std::string(what) + ": not idempotent");
}

void require_density(const ComplexMatrix& rho, double tol, const char* what) {
  if (!rho.is_square()) throw DimensionError(std::string(what) + ": not square");
  if (!is_hermitian(rho, tol)) throw ValidationError(std::string(what) + ": not Hermitian");
  const Complex tr = trace(rho);
  if (std::abs(tr - Complex{1.0}) > tol) {
    std::ostringstream msg;
    msg << what << ": trace " << tr.real() << " differs from 1";
    throw ValidationError(msg.str());
  }
  const auto ev = hermitian_eigenvalues(rho);
  if (!ev.empty() && ev.front() < -tol) {
    std::ostringstream msg;
    msg << what << ": not positive semidefinite (eigenvalue " << ev.front() << ")";
    throw ValidationError(msg.str());
  }
}

ProjectorSet::ProjectorSet(std::vector<std::string> labels, std::vector<ComplexMatrix> projectors, double tol)
    : labels_(std::move(labels)), projectors_(std::move(projectors)) {
  if (labels_.size() != projectors_.size()) throw ValidationError("ProjectorSet: label count differs from projector count");
  require_uniform_square(projectors_, "ProjectorSet");
  const std::size_t n = dim();
  ComplexMatrix total(n, n);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    require_projector(projectors_[i], tol, ("ProjectorSet[" + labels_[i] + "]").c_str());
    total += projectors_[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (max_abs(projectors_[i] * projectors_[j]) > tol) {
        throw ValidationError("ProjectorSet: projectors " + labels_[j] + " and " + labels_[i] + " are not orthogonal");
      }
    }
  }
  if (max_abs_diff(total, ComplexMatrix::identity(n)) > tol) throw ValidationError("ProjectorSet: projectors do not sum to identity");
}

const ComplexMatrix& ProjectorSet::get(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("ProjectorSet: no projector labelled " + label);
  return projectors_[static_cast<std::size_t>(it - labels_.begin())];
}

std::vector<MeasurementOutcome> measure(const ComplexMatrix& rho, const ProjectorSet& projectors) {
  if (rho.rows() != projectors.dim() || rho.cols() != projectors.dim()) {
    throw DimensionError("measure: state dimension differs from projector dimension");
  }
  std::vector<MeasurementOutcome> out;
  out.reserve(projectors.size());
  for (const auto& p : projectors.projectors()) {
    out.push_back({trace(p * rho).real(), p * rho * p});
  }
  return out;
}

}  // namespace qfa
