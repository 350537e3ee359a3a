#pragma once

// Dense complex linear algebra for small Hilbert spaces.
//
// Storage is row-major everywhere, including vec(): entry (i, j) of an
// n x n matrix lands at position i * n + j of its vectorization.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qfa {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  /// rows x cols zero matrix; both extents must be at least 1.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Nested row lists, e.g. {{1, 2}, {3, 4}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  /// |i><j| in an n-dimensional space.
  static ComplexMatrix basis_op(std::size_t n, std::size_t i, std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex scale);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);
/// Hilbert-Schmidt inner product Tr(a^dagger b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum of singular values, via the eigenvalues of a^dagger a (negative round-off clamped to 0).
double trace_norm(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
/// Largest |a(i, j)|.
double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigenvalues of a Hermitian matrix in ascending order (only the Hermitian part is read).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);

/// Row-major vectorization of an n x n matrix into an n^2 x 1 column.
ComplexMatrix vec(const ComplexMatrix& a);
/// Inverse of vec(); accepts an n^2 x 1 column or a 1 x n^2 row.
ComplexMatrix unvec(const ComplexMatrix& v);

/// Residual-norm threshold below which span_insert treats a candidate as dependent.
inline constexpr double kDefaultSpanTolerance = 1e-8;

/// Gram-Schmidt step (two passes) against an orthonormal basis under <A, B> = Tr(A^dagger B).
/// Appends the normalized residual and returns true when its Frobenius norm exceeds tol.
bool span_insert(std::vector<ComplexMatrix>& basis, const ComplexMatrix& candidate,
                 double tol = kDefaultSpanTolerance);

}  // namespace qfa
