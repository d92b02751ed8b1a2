#pragma once

/**
 * @file matrix.hpp
 * @brief Dense matrices and exact rank/kernel routines over Z, Q and F_p.
 *
 * Rank over Q is computed by fraction-free (Bareiss) elimination on an
 * integer matrix; every intermediate entry is a minor of the input, so the
 * division at each step is exact. Rank over F_p uses plain Gaussian
 * elimination on 64-bit residues.
 */

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fatpoints/field.hpp"

namespace fatpoints {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  T* row(std::size_t r) { return data_.data() + r * cols_; }
  const T* row(std::size_t r) const { return data_.data() + r * cols_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  /// Appends the rows of `other`; column counts must agree.
  void append_rows(const Matrix& other) {
    if (rows_ == 0 && cols_ == 0) cols_ = other.cols_;
    if (other.cols_ != cols_) throw std::invalid_argument("append_rows: column mismatch");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;
using ModMatrix = Matrix<std::uint64_t>;

/// Rank over Q of an integer matrix by fraction-free elimination.
inline std::size_t bareiss_rank(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  mpz_class prev = 1;
  mpz_class t1, t2;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    // Smallest nonzero pivot keeps the later products a little smaller.
    std::size_t best_bits = SIZE_MAX;
    for (std::size_t r = rank; r < rows; ++r) {
      if (sgn(m(r, c)) != 0) {
        const std::size_t bits = mpz_sizeinbase(m(r, c).get_mpz_t(), 2);
        if (bits < best_bits) {
          best_bits = bits;
          pivot = r;
        }
      }
    }
    if (best_bits == SIZE_MAX) continue;
    m.swap_rows(rank, pivot);
    const mpz_class& p = m(rank, c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const mpz_class factor = m(r, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        // m(r,j) = (p*m(r,j) - factor*m(rank,j)) / prev
        mpz_mul(t1.get_mpz_t(), p.get_mpz_t(), m(r, j).get_mpz_t());
        mpz_mul(t2.get_mpz_t(), factor.get_mpz_t(), m(rank, j).get_mpz_t());
        mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
        mpz_divexact(m(r, j).get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
      }
      m(r, c) = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

/// Reduction of an integer matrix modulo p.
inline ModMatrix reduce_mod(const IntMatrix& m, std::uint64_t p) {
  ModMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = mpz_fdiv_ui(m(r, c).get_mpz_t(), p);
  }
  return out;
}

namespace detail {

/// In-place reduced row echelon form mod p; returns pivot columns.
inline std::vector<std::size_t> rref_mod(ModMatrix& m, std::uint64_t p, bool reduce_above) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (m(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    m.swap_rows(rank, pivot);
    const std::uint64_t inv = inverse_mod(m(rank, c), p);
    std::uint64_t* prow = m.row(rank);
    for (std::size_t j = c; j < cols; ++j) prow[j] = prow[j] * inv % p;
    const std::size_t start = reduce_above ? 0 : rank + 1;
    for (std::size_t r = start; r < rows; ++r) {
      if (r == rank) continue;
      std::uint64_t* row = m.row(r);
      const std::uint64_t f = row[c];
      if (f == 0) continue;
      const std::uint64_t neg = p - f;
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] != 0) row[j] = (row[j] + neg * prow[j]) % p;
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace detail

/// Rank over F_p; entries must already be reduced into [0, p). p < 2^32.
inline std::size_t rank_mod_p(ModMatrix m, std::uint64_t p) { return detail::rref_mod(m, p, false).size(); }

/// Basis of the right kernel over F_p, one vector per free column.
inline std::vector<std::vector<std::uint64_t>> kernel_mod_p(ModMatrix m, std::uint64_t p) {
  const auto pivots = detail::rref_mod(m, p, true);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const std::uint64_t x = m(i, free);
      v[pivots[i]] = x == 0 ? 0 : p - x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of the right kernel over Q of an integer matrix, each vector scaled
/// to a primitive integer vector.
inline std::vector<std::vector<mpz_class>> kernel_rational(const IntMatrix& in) {
  const std::size_t rows = in.rows(), cols = in.cols();
  Matrix<mpq_class> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = in(r, c);
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (sgn(m(r, c)) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    m.swap_rows(rank, pivot);
    const mpq_class inv = 1 / m(rank, c);
    for (std::size_t j = c; j < cols; ++j) m(rank, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || sgn(m(r, c)) == 0) continue;
      const mpq_class f = m(r, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(m(rank, j)) != 0) m(r, j) -= f * m(rank, j);
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<mpz_class>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    mpz_class lcm = 1;
    for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> iv(cols);
    mpz_class g = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      iv[j] = v[j].get_num() * (lcm / v[j].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv[j].get_mpz_t());
    }
    if (g > 1) {
      for (auto& x : iv) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
    basis.push_back(std::move(iv));
  }
  return basis;
}

}  // namespace fatpoints
