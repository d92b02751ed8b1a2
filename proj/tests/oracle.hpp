#pragma once

// Reference computations used only by the tests. They share no code with
// the library's condition matrices: vanishing is tested through the local
// Taylor coefficients
//   [s^i t^k] f(a + s, b + t) = sum c_{uv} C(u,i) C(v,k) a^(u-i) b^(v-k)
// in the affine chart of the point, and dimensions come either from plain
// rational Gaussian elimination or from enumerating every form over F_q.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline long long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Monomials x^a y^b z^c of degree d, in an order unrelated to the library's.
inline std::vector<std::array<int, 3>> monomials(int d) {
  std::vector<std::array<int, 3>> out;
  for (int c = 0; c <= d; ++c) {
    for (int b = 0; b <= d - c; ++b) out.push_back({d - b - c, b, c});
  }
  return out;
}

/// A point given by integer coordinates; the chart is the last nonzero one.
template <typename T>
struct Chart {
  int chart;
  std::array<int, 2> other;
  std::array<T, 2> affine;  // the two other coordinates divided by the chart coordinate
};

template <typename T>
Chart<T> chart_of(const std::array<T, 3>& p, T (*divide)(const T&, const T&)) {
  int chart = -1;
  for (int i = 2; i >= 0; --i) {
    if (p[static_cast<std::size_t>(i)] != T(0)) {
      chart = i;
      break;
    }
  }
  if (chart < 0) throw std::invalid_argument("oracle: zero point");
  Chart<T> c{chart, {}, {}};
  for (int i = 0, k = 0; i < 3; ++i) {
    if (i == chart) continue;
    c.other[static_cast<std::size_t>(k)] = i;
    c.affine[static_cast<std::size_t>(k)] = divide(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(chart)]);
    ++k;
  }
  return c;
}

// ---------------------------------------------------------------- over Q

inline mpq_class qdiv(const mpq_class& a, const mpq_class& b) { return a / b; }

inline mpq_class qpow(const mpq_class& a, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= a;
  return r;
}

/// Rank over Q by Gauss-Jordan elimination on rationals.
inline std::size_t rank_q(std::vector<std::vector<mpq_class>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// dim of degree-d forms vanishing to order >= m_i at the given points.
inline long long dim_q(const std::vector<std::array<mpq_class, 3>>& pts, const std::vector<int>& mults, int d) {
  const auto mons = monomials(d);
  std::vector<std::vector<mpq_class>> rows;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto ch = chart_of<mpq_class>(pts[p], qdiv);
    for (int i = 0; i < mults[p]; ++i) {
      for (int k = 0; i + k < mults[p]; ++k) {
        std::vector<mpq_class> row;
        for (const auto& e : mons) {
          const int u = e[static_cast<std::size_t>(ch.other[0])], v = e[static_cast<std::size_t>(ch.other[1])];
          if (u < i || v < k) {
            row.emplace_back(0);
            continue;
          }
          row.push_back(mpq_class(mpz_class(static_cast<long>(choose(u, i) * choose(v, k)))) * qpow(ch.affine[0], u - i) * qpow(ch.affine[1], v - k));
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return static_cast<long long>(mons.size()) - static_cast<long long>(rank_q(rows));
}

/// Least d with a nonzero form vanishing to the given orders.
inline int alpha_q(const std::vector<std::array<mpq_class, 3>>& pts, const std::vector<int>& mults) {
  for (int d = 0;; ++d) {
    if (dim_q(pts, mults, d) > 0) return d;
  }
}

// ---------------------------------------------------------------- over F_q

struct ModPoint {
  std::array<long long, 3> c;
};

inline long long mod(long long a, long long q) { return ((a % q) + q) % q; }

inline long long inv_mod(long long a, long long q) {
  for (long long x = 1; x < q; ++x) {
    if (mod(a * x, q) == 1) return x;
  }
  throw std::invalid_argument("oracle: not invertible");
}

/// All points of P^2(F_q), normalized with the last nonzero coordinate 1.
inline std::vector<ModPoint> all_points(long long q) {
  std::vector<ModPoint> out;
  for (long long x = 0; x < q; ++x) {
    for (long long y = 0; y < q; ++y) out.push_back({{x, y, 1}});
  }
  for (long long x = 0; x < q; ++x) out.push_back({{x, 1, 0}});
  out.push_back({{1, 0, 0}});
  return out;
}

/// Precomputed local conditions: for every (i,k) with i + k < m, the
/// coefficient vector over the monomials.
inline std::vector<std::vector<long long>> local_conditions(const ModPoint& p, int m, int d, long long q) {
  int chart = 2;
  while (p.c[static_cast<std::size_t>(chart)] == 0) --chart;
  std::array<int, 2> other{};
  for (int i = 0, k = 0; i < 3; ++i) {
    if (i != chart) other[static_cast<std::size_t>(k++)] = i;
  }
  const long long inv = inv_mod(p.c[static_cast<std::size_t>(chart)], q);
  const long long a = mod(p.c[static_cast<std::size_t>(other[0])] * inv, q);
  const long long b = mod(p.c[static_cast<std::size_t>(other[1])] * inv, q);
  auto pw = [&](long long base, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r = mod(r * base, q);
    return r;
  };
  const auto mons = monomials(d);
  std::vector<std::vector<long long>> out;
  for (int i = 0; i < m; ++i) {
    for (int k = 0; i + k < m; ++k) {
      std::vector<long long> row;
      for (const auto& e : mons) {
        const int u = e[static_cast<std::size_t>(other[0])], v = e[static_cast<std::size_t>(other[1])];
        if (u < i || v < k) {
          row.push_back(0);
          continue;
        }
        row.push_back(mod(mod(choose(u, i), q) * mod(choose(v, k), q) % q * pw(a, u - i) % q * pw(b, v - k), q));
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

/// Number of degree-d forms (including 0) over F_q vanishing to order >= m_i
/// at each point, by enumerating all q^C(d+2,2) coefficient vectors.
inline long long count_forms(const std::vector<ModPoint>& pts, const std::vector<int>& mults, int d, long long q) {
  const std::size_t n = monomials(d).size();
  std::vector<std::vector<long long>> conds;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (auto& row : local_conditions(pts[i], mults[i], d, q)) conds.push_back(std::move(row));
  }
  std::vector<long long> coeff(n, 0);
  long long count = 0;
  for (;;) {
    bool ok = true;
    for (const auto& row : conds) {
      long long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += row[j] * coeff[j];
      if (s % q != 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    std::size_t j = 0;
    while (j < n && ++coeff[j] == q) coeff[j++] = 0;
    if (j == n) break;
  }
  return count;
}

/// log_q of count_forms; throws if the count is not a power of q.
inline long long dim_by_enumeration(const std::vector<ModPoint>& pts, const std::vector<int>& mults, int d,
                                    long long q) {
  long long count = count_forms(pts, mults, d, q);
  long long dim = 0;
  while (count > 1) {
    if (count % q != 0) throw std::logic_error("oracle: count is not a power of q");
    count /= q;
    ++dim;
  }
  return dim;
}

}  // namespace oracle
