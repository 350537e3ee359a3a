#pragma once

// Seeded random states, channels and machines for tests. Unitaries come from
// Eigen's QR of a complex Gaussian matrix; channels are read off the first
// block column of a random unitary on an extended space.

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qfa/automata.hpp"
#include "qfa/linalg.hpp"
#include "qfa/quantum_ops.hpp"

namespace qfa::testing {

class RandomMachines {
 public:
  explicit RandomMachines(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

  Complex gaussian() {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng_), n(rng_)};
  }

  ComplexMatrix matrix(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (auto& x : m.entries()) x = gaussian();
    return m;
  }

  ComplexMatrix hermitian(std::size_t n) {
    const ComplexMatrix g = matrix(n, n);
    return 0.5 * (g + dagger(g));
  }

  ComplexMatrix unitary(std::size_t n) {
    Eigen::MatrixXcd g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t j = 0; j < n; ++j) {
      const Complex d = r(j, j);
      if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    ComplexMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u(i, j) = q(i, j);
    return u;
  }

  /// Random mixed state of the given rank (full rank by default).
  ComplexMatrix density(std::size_t n, std::size_t rank = 0) {
    const ComplexMatrix g = matrix(n, rank == 0 ? n : rank);
    ComplexMatrix rho = g * dagger(g);
    return (1.0 / trace(rho).real()) * rho;
  }

  /// Trace-preserving channel with `kraus_count` operators (random in [1, 3] when 0).
  std::vector<ComplexMatrix> channel_kraus(std::size_t n, std::size_t kraus_count = 0) {
    const std::size_t k = kraus_count == 0 ? index(1, 3) : kraus_count;
    const ComplexMatrix u = unitary(n * k);
    std::vector<ComplexMatrix> kraus;
    for (std::size_t b = 0; b < k; ++b) {
      ComplexMatrix e(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e(i, j) = u(b * n + i, j);
      kraus.push_back(std::move(e));
    }
    return kraus;
  }

  QuantumOperation channel(std::size_t n, std::size_t kraus_count = 0) {
    return QuantumOperation(channel_kraus(n, kraus_count));
  }

  /// Projectors onto consecutive column blocks of one random unitary.
  std::vector<ComplexMatrix> orthogonal_split(std::size_t n, const std::vector<std::size_t>& ranks) {
    const ComplexMatrix u = unitary(n);
    std::vector<ComplexMatrix> out;
    std::size_t col = 0;
    for (auto r : ranks) {
      ComplexMatrix p(n, n);
      for (std::size_t c = col; c < col + r; ++c)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) p(i, j) += u(i, c) * std::conj(u(j, c));
      out.push_back(std::move(p));
      col += r;
    }
    return out;
  }

  ComplexMatrix projector(std::size_t n, std::size_t rank) { return orthogonal_split(n, {rank, n - rank}).front(); }

  MO1gQFA mo(std::size_t n, const std::vector<std::string>& symbols) {
    std::vector<QuantumOperation> ops;
    for (std::size_t s = 0; s < symbols.size(); ++s) ops.push_back(channel(n));
    return {Alphabet(symbols), density(n, index(1, n)), std::move(ops), projector(n, index(0, n))};
  }

  /// Three-way split with a nonempty non-halting block; rho0 lives inside it.
  MM1gQFA mm(std::size_t n, const std::vector<std::string>& symbols) {
    const std::size_t non = n == 1 ? 1 : index(1, n - 1);
    const std::size_t acc = index(0, n - non);
    const std::size_t rej = n - non - acc;
    const ComplexMatrix u = unitary(n);
    std::vector<ComplexMatrix> split(3, ComplexMatrix(n, n));
    const std::size_t ranks[3] = {non, acc, rej};
    std::size_t col = 0;
    for (int l = 0; l < 3; ++l) {
      for (std::size_t c = col; c < col + ranks[l]; ++c)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) split[l](i, j) += u(i, c) * std::conj(u(j, c));
      col += ranks[l];
    }
    // rho0 = V sigma V^dagger with V the first `non` columns of u.
    ComplexMatrix v(n, non);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < non; ++c) v(i, c) = u(i, c);
    const ComplexMatrix rho0 = v * density(non) * dagger(v);
    std::vector<QuantumOperation> ops;
    for (std::size_t s = 0; s < symbols.size(); ++s) ops.push_back(channel(n));
    return {Alphabet(symbols), rho0, std::move(ops), channel(n), channel(n),
            ProjectorSet({"non", "acc", "rej"}, std::move(split))};
  }

  std::vector<double> stochastic_row(std::size_t n) {
    std::vector<double> row(n);
    double total = 0.0;
    for (auto& x : row) total += (x = uniform(0.0, 1.0) + 1e-3);
    for (auto& x : row) x /= total;
    return row;
  }

  ProbabilisticAutomaton pa(std::size_t n, const std::vector<std::string>& symbols) {
    std::vector<std::vector<std::vector<double>>> mats;
    for (std::size_t s = 0; s < symbols.size(); ++s) {
      std::vector<std::vector<double>> a;
      for (std::size_t i = 0; i < n; ++i) a.push_back(stochastic_row(n));
      mats.push_back(std::move(a));
    }
    std::vector<int> eta(n);
    for (auto& e : eta) e = static_cast<int>(index(0, 1));
    return {Alphabet(symbols), stochastic_row(n), std::move(mats), std::move(eta)};
  }

 private:
  std::mt19937_64 rng_;
};

/// All words of length <= max_len over `symbols`, in length-lex order.
inline std::vector<Word> all_words(const std::vector<std::string>& symbols, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (const auto& s : symbols) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

}  // namespace qfa::testing
