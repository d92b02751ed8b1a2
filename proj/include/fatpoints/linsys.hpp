#pragma once

/**
 * @file linsys.hpp
 * @brief Linear systems of plane curves through fat points.
 *
 * A degree-d form vanishes to order >= m at P exactly when all of its
 * partial derivatives of order m-1 vanish at P (Euler's relation handles the
 * lower orders). Stacking those conditions for every point gives a matrix
 * whose corank is the dimension of the space of degree-d forms in I(mZ)_d.
 *
 * "General points" are handled through random witnesses: the rank of the
 * condition matrix is lower semicontinuous in the point coordinates, so a
 * full-rank witness proves the system is empty for general points, while a
 * nonempty system is only proven for all points when the expected dimension
 * is already positive.
 */

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatpoints/matrix.hpp"
#include "fatpoints/poly.hpp"
#include "fatpoints/random.hpp"

namespace fatpoints {

class FatPointScheme {
 public:
  FatPointScheme(std::vector<ProjectivePoint> points, std::vector<int> multiplicities)
      : points_(std::move(points)), mults_(std::move(multiplicities)) {
    if (points_.size() != mults_.size()) throw std::invalid_argument("FatPointScheme: one multiplicity per point");
    if (points_.empty()) throw std::invalid_argument("FatPointScheme: no points");
    for (const auto& p : points_) require_same_field(points_.front().field(), p.field());
    for (int m : mults_) {
      if (m < 0) throw std::invalid_argument("FatPointScheme: negative multiplicity");
    }
    std::vector<ProjectivePoint> sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("FatPointScheme: points must be pairwise distinct");
    }
  }

  static FatPointScheme uniform(std::vector<ProjectivePoint> points, int m) {
    std::vector<int> mults(points.size(), m);
    return FatPointScheme(std::move(points), std::move(mults));
  }

  const std::vector<ProjectivePoint>& points() const { return points_; }
  const std::vector<int>& multiplicities() const { return mults_; }
  Field field() const { return points_.front().field(); }
  std::size_t size() const { return points_.size(); }
  int max_multiplicity() const { return *std::max_element(mults_.begin(), mults_.end()); }
  int total_multiplicity() const { return std::accumulate(mults_.begin(), mults_.end(), 0); }

  /// Number of linear conditions, sum of C(m_i + 1, 2).
  long long condition_count() const {
    long long n = 0;
    for (int m : mults_) n += binomial(m + 1, 2);
    return n;
  }

 private:
  std::vector<ProjectivePoint> points_;
  std::vector<int> mults_;
};

/// C(d+2, 2) - sum C(m_i+1, 2), not clamped at zero.
inline long long expected_dim(const FatPointScheme& scheme, int d) {
  if (d < 0) throw std::invalid_argument("expected_dim: negative degree");
  return binomial(d + 2, 2) - scheme.condition_count();
}

/// Derivative-based conditions need p > d and p > max m once some m >= 2;
/// simple points only impose evaluations, which are characteristic-free.
inline void check_characteristic(const Field& field, int d, int max_mult) {
  if (!field.is_prime_field() || max_mult < 2) return;
  const auto p = field.characteristic();
  if (p <= static_cast<std::uint64_t>(d) || p <= static_cast<std::uint64_t>(max_mult)) {
    throw CharacteristicTooSmall("characteristic " + std::to_string(p) + " too small for degree " +
                                 std::to_string(d) + " and multiplicity " + std::to_string(max_mult));
  }
}

struct ConditionRow {
  std::size_t point;    ///< index into the scheme's point list
  Exponent derivative;  ///< multi-index beta of the partial, |beta| = m_i - 1
};

/// Fat-point condition matrix. Over Q each row block is built from the
/// primitive integer representative v_i = s_i * P_i of its point, so the
/// stored matrix is integral; this rescales row block i by s_i^(d - m_i + 1)
/// and leaves the rank unchanged. entry() undoes the scaling.
struct ConditionMatrix {
  Field field = Field::rational();
  int degree = 0;
  std::vector<ConditionRow> rows;
  std::vector<Exponent> columns;
  IntMatrix integer;   ///< populated over Q
  ModMatrix modular;   ///< populated over F_p
  std::vector<mpq_class> point_scale;

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return columns.size(); }

  /// The beta-partial of the column monomial evaluated at the normalized point.
  Scalar entry(std::size_t r, std::size_t c) const {
    if (field.is_prime_field()) return Scalar::residue(modular(r, c), field.characteristic());
    const auto& row = rows[r];
    const int order = row.derivative[0] + row.derivative[1] + row.derivative[2];
    mpq_class scale = 1;
    for (int i = 0; i < degree - order; ++i) scale *= point_scale[row.point];
    return Scalar::rational(mpq_class(integer(r, c)) / scale);
  }
};

namespace detail {

/// Multi-indices of total order n, in monomial_basis order.
inline std::vector<Exponent> derivative_indices(int n) { return monomial_basis(n); }

}  // namespace detail

/// Rows: for each point with m_i >= 1, one row per partial of order m_i - 1.
/// Columns: monomial_basis(d). Points with m_i > d give all-zero rows; callers
/// that need the dimension must treat that case separately (system_dim does).
inline ConditionMatrix build_condition_matrix(const FatPointScheme& scheme, int d) {
  if (d < 0) throw std::invalid_argument("build_condition_matrix: negative degree");
  const Field field = scheme.field();
  check_characteristic(field, d, scheme.max_multiplicity());
  ConditionMatrix cm;
  cm.field = field;
  cm.degree = d;
  cm.columns = monomial_basis(d);
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    const int m = scheme.multiplicities()[i];
    if (m == 0) continue;
    for (const auto& beta : detail::derivative_indices(m - 1)) cm.rows.push_back({i, beta});
  }
  const std::size_t nrows = cm.rows.size(), ncols = cm.columns.size();
  if (field.is_rational()) {
    cm.integer = IntMatrix(nrows, ncols);
    std::vector<std::array<std::vector<mpz_class>, 3>> powers(scheme.size());
    for (std::size_t i = 0; i < scheme.size(); ++i) {
      const auto& p = scheme.points()[i];
      const auto v = p.integer_representative();
      cm.point_scale.push_back(mpq_class(v[static_cast<std::size_t>(p.chart())]));
      if (scheme.multiplicities()[i] == 0) continue;
      for (std::size_t k = 0; k < 3; ++k) {
        powers[i][k].push_back(1);
        for (int e = 1; e <= d; ++e) powers[i][k].push_back(powers[i][k].back() * v[k]);
      }
    }
    for (std::size_t r = 0; r < nrows; ++r) {
      const auto& row = cm.rows[r];
      for (std::size_t c = 0; c < ncols; ++c) {
        const auto& mu = cm.columns[c];
        const auto& beta = row.derivative;
        if (mu[0] < beta[0] || mu[1] < beta[1] || mu[2] < beta[2]) continue;
        mpz_class value = 1;
        for (std::size_t k = 0; k < 3; ++k) {
          for (int i = 0; i < beta[k]; ++i) value *= static_cast<long>(mu[k] - i);
        }
        for (std::size_t k = 0; k < 3; ++k) value *= powers[row.point][k][static_cast<std::size_t>(mu[k] - beta[k])];
        cm.integer(r, c) = std::move(value);
      }
    }
  } else {
    const std::uint64_t p = field.characteristic();
    cm.modular = ModMatrix(nrows, ncols, 0);
    std::vector<std::array<std::vector<std::uint64_t>, 3>> powers(scheme.size());
    for (std::size_t i = 0; i < scheme.size(); ++i) {
      cm.point_scale.push_back(mpq_class(1));
      for (std::size_t k = 0; k < 3; ++k) {
        powers[i][k].push_back(1 % p);
        const std::uint64_t x = scheme.points()[i][static_cast<int>(k)].as_residue();
        for (int e = 1; e <= d; ++e) powers[i][k].push_back(powers[i][k].back() * x % p);
      }
    }
    auto ff_mod = [p](int e, int b) {
      std::uint64_t r = 1 % p;
      for (int i = 0; i < b; ++i) r = r * static_cast<std::uint64_t>(e - i) % p;
      return r;
    };
    for (std::size_t r = 0; r < nrows; ++r) {
      const auto& row = cm.rows[r];
      for (std::size_t c = 0; c < ncols; ++c) {
        const auto& mu = cm.columns[c];
        const auto& beta = row.derivative;
        if (mu[0] < beta[0] || mu[1] < beta[1] || mu[2] < beta[2]) continue;
        std::uint64_t value = ff_mod(mu[0], beta[0]) * ff_mod(mu[1], beta[1]) % p * ff_mod(mu[2], beta[2]) % p;
        for (std::size_t k = 0; k < 3; ++k) {
          value = value * powers[row.point][k][static_cast<std::size_t>(mu[k] - beta[k])] % p;
        }
        cm.modular(r, c) = value;
      }
    }
  }
  return cm;
}

/// How the rank of a condition matrix over Q is obtained.
struct RankStrategy {
  enum class Kind { Exact, SinglePrime, MultiPrime };

  Kind kind = Kind::MultiPrime;
  int primes = 2;
  std::uint64_t seed = 20120401;

  static RankStrategy exact() { return {Kind::Exact, 0, 20120401}; }
  static RankStrategy single_prime(std::uint64_t seed = 20120401) { return {Kind::SinglePrime, 1, seed}; }
  static RankStrategy multi_prime(int k = 2, std::uint64_t seed = 20120401) {
    if (k < 1) throw std::invalid_argument("multi_prime needs at least one prime");
    return {Kind::MultiPrime, k, seed};
  }

  /// "exact", "prime" or "multiprime:K".
  static RankStrategy parse(const std::string& s) {
    if (s == "exact") return exact();
    if (s == "prime") return single_prime();
    const std::string prefix = "multiprime:";
    if (s.rfind(prefix, 0) == 0) {
      const std::string digits = s.substr(prefix.size());
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("malformed strategy: " + s);
      }
      return multi_prime(std::stoi(digits));
    }
    if (s == "multiprime") return multi_prime();
    throw std::invalid_argument("unknown strategy: " + s);
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Exact: return "exact";
      case Kind::SinglePrime: return "prime";
      case Kind::MultiPrime: return "multiprime:" + std::to_string(primes);
    }
    return "?";
  }

  /// The i-th modulus this strategy uses; a fixed function of the seed.
  std::uint64_t prime(int i) const {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    return random_prime31(rng);
  }
};

enum class Certification { ExactRational, SinglePrime, MultiPrime };

inline std::string to_string(Certification c) {
  switch (c) {
    case Certification::ExactRational: return "EXACT_RATIONAL";
    case Certification::SinglePrime: return "SINGLE_PRIME";
    case Certification::MultiPrime: return "MULTI_PRIME";
  }
  return "?";
}

struct LinearSystemReport {
  std::string field;
  int degree = 0;
  long long expected_dim = 0;
  long long actual_dim = 0;
  long long superabundance = 0;
  Certification certification = Certification::ExactRational;
  /// Moduli whose ranks were used (the field characteristic over F_p).
  std::vector<std::uint64_t> primes;
  /// True when the rank is exact: Bareiss over Q, elimination over the base
  /// field F_p, or a modular rank equal to min(rows, cols), which cannot
  /// exceed the rank over Q.
  bool rank_proven = false;
  std::optional<std::vector<HomoPoly>> kernel_basis;
};

namespace detail {

inline HomoPoly poly_from_kernel_vector(const Field& field, int d, const std::vector<Scalar>& coeffs) {
  return HomoPoly::from_dense(field, d, coeffs);
}

inline void verify_kernel(const FatPointScheme& scheme, const std::vector<HomoPoly>& basis) {
  for (const auto& g : basis) {
    for (std::size_t i = 0; i < scheme.size(); ++i) {
      if (order_of_vanishing(g, scheme.points()[i]) < scheme.multiplicities()[i]) {
        throw std::logic_error("kernel element fails the vanishing post-check at point " + std::to_string(i));
      }
    }
  }
}

}  // namespace detail

/// Dimension (and optionally a basis) of the degree-d part of I(mZ).
inline LinearSystemReport system_dim(const FatPointScheme& scheme, int d,
                                     const RankStrategy& strategy = RankStrategy::multi_prime(),
                                     bool want_kernel = false) {
  if (d < 0) throw std::invalid_argument("system_dim: negative degree");
  const Field field = scheme.field();
  check_characteristic(field, d, scheme.max_multiplicity());
  LinearSystemReport rep;
  rep.field = field.to_string();
  rep.degree = d;
  rep.expected_dim = expected_dim(scheme, d);
  const long long ncols = binomial(d + 2, 2);

  auto finish = [&](long long rank) {
    rep.actual_dim = ncols - rank;
    rep.superabundance = rep.actual_dim - std::max<long long>(rep.expected_dim, 0);
    return rep;
  };

  if (field.is_prime_field()) {
    rep.certification = Certification::SinglePrime;
    rep.primes = {field.characteristic()};
  } else {
    rep.certification = strategy.kind == RankStrategy::Kind::Exact ? Certification::ExactRational
                        : strategy.kind == RankStrategy::Kind::SinglePrime ? Certification::SinglePrime
                                                                           : Certification::MultiPrime;
  }

  // No nonzero degree-d form has a point of multiplicity above d.
  if (scheme.max_multiplicity() > d) {
    rep.rank_proven = true;
    if (want_kernel) rep.kernel_basis = std::vector<HomoPoly>{};
    if (field.is_rational()) rep.certification = Certification::ExactRational;
    return finish(ncols);
  }

  const ConditionMatrix cm = build_condition_matrix(scheme, d);
  const auto full = static_cast<long long>(std::min(cm.row_count(), cm.col_count()));

  if (field.is_prime_field()) {
    const std::uint64_t p = field.characteristic();
    rep.rank_proven = true;
    if (want_kernel) {
      const auto ker = kernel_mod_p(cm.modular, p);
      std::vector<HomoPoly> basis;
      for (const auto& v : ker) {
        std::vector<Scalar> coeffs;
        for (auto x : v) coeffs.push_back(Scalar::residue(x, p));
        basis.push_back(detail::poly_from_kernel_vector(field, d, coeffs));
      }
      detail::verify_kernel(scheme, basis);
      rep.kernel_basis = basis;
      return finish(ncols - static_cast<long long>(basis.size()));
    }
    return finish(static_cast<long long>(rank_mod_p(cm.modular, p)));
  }

  if (want_kernel || strategy.kind == RankStrategy::Kind::Exact) {
    rep.certification = Certification::ExactRational;
    rep.rank_proven = true;
    if (want_kernel) {
      const auto ker = kernel_rational(cm.integer);
      std::vector<HomoPoly> basis;
      for (const auto& v : ker) {
        std::vector<Scalar> coeffs;
        for (const auto& x : v) coeffs.push_back(Scalar::from_mpz(field, x));
        basis.push_back(detail::poly_from_kernel_vector(field, d, coeffs));
      }
      detail::verify_kernel(scheme, basis);
      rep.kernel_basis = basis;
      return finish(ncols - static_cast<long long>(basis.size()));
    }
    return finish(static_cast<long long>(bareiss_rank(cm.integer)));
  }

  const int count = strategy.kind == RankStrategy::Kind::SinglePrime ? 1 : strategy.primes;
  std::optional<long long> agreed;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t p = strategy.prime(i);
    rep.primes.push_back(p);
    const auto rank = static_cast<long long>(rank_mod_p(reduce_mod(cm.integer, p), p));
    if (agreed && *agreed != rank) {
      // Primes disagree: at least one is unlucky. Settle it exactly.
      rep.certification = Certification::ExactRational;
      rep.rank_proven = true;
      return finish(static_cast<long long>(bareiss_rank(cm.integer)));
    }
    agreed = rank;
  }
  // Every prime was consulted; a full rank modulo p is also full over Q.
  rep.rank_proven = *agreed == full;
  return finish(*agreed);
}

/// Basis of I(mZ)_d; exact over Q, or over the base field F_p.
inline std::vector<HomoPoly> kernel_basis(const FatPointScheme& scheme, int d) {
  return *system_dim(scheme, d, RankStrategy::exact(), true).kernel_basis;
}

/// Which configurations a bound on alpha is known to hold for.
enum class BoundCertificate {
  Trivial,      ///< degree below the largest multiplicity: empty for every configuration
  General,      ///< empty at a full-rank witness, hence for general points
  AllPoints,    ///< expected dimension positive: nonempty for every configuration
  Witness,      ///< nonempty at this exact witness (kernel proven)
  Heuristic,    ///< nonempty by modular rank agreement only
};

inline std::string to_string(BoundCertificate b) {
  switch (b) {
    case BoundCertificate::Trivial: return "trivial";
    case BoundCertificate::General: return "general";
    case BoundCertificate::AllPoints: return "all_points";
    case BoundCertificate::Witness: return "witness";
    case BoundCertificate::Heuristic: return "heuristic";
  }
  return "?";
}

struct AlphaResult {
  int alpha = 0;
  /// Nonexistence side: the system at alpha - 1 is empty.
  BoundCertificate lower = BoundCertificate::Trivial;
  /// Existence side: the system at alpha is nonempty.
  BoundCertificate upper = BoundCertificate::AllPoints;
  std::optional<LinearSystemReport> below;  ///< report at alpha - 1 when computed
  std::optional<LinearSystemReport> at;     ///< report at alpha when computed
  long long expected_at = 0;
};

struct AlphaOptions {
  RankStrategy search = RankStrategy::multi_prime(2);
  /// When set, the reports at alpha - 1 and alpha are recomputed with this
  /// strategy after the search.
  std::optional<RankStrategy> certify;
  /// Search starts at max(lower_bound, max m_i).
  int lower_bound = 0;
};

namespace detail {

inline BoundCertificate upper_certificate(const LinearSystemReport& rep) {
  if (rep.expected_dim > 0) return BoundCertificate::AllPoints;
  if (rep.rank_proven || rep.certification == Certification::ExactRational) return BoundCertificate::Witness;
  return BoundCertificate::Heuristic;
}

}  // namespace detail

/// Initial degree of I(mZ): least d with a nonzero form vanishing to the
/// prescribed orders.
inline AlphaResult alpha(const FatPointScheme& scheme, const AlphaOptions& options = {}) {
  const int top = scheme.max_multiplicity();
  if (top < 1) throw std::invalid_argument("alpha: all multiplicities are zero");
  const int start = std::max(options.lower_bound, top);
  AlphaResult result;
  std::optional<LinearSystemReport> previous;
  for (int d = start;; ++d) {
    const long long expected = expected_dim(scheme, d);
    if (expected > 0) {
      result.alpha = d;
      result.expected_at = expected;
      result.upper = BoundCertificate::AllPoints;
      break;
    }
    auto rep = system_dim(scheme, d, options.search);
    if (rep.actual_dim >= 1) {
      result.alpha = d;
      result.expected_at = expected;
      result.upper = detail::upper_certificate(rep);
      result.at = std::move(rep);
      break;
    }
    previous = std::move(rep);
    if (d > scheme.total_multiplicity()) throw std::logic_error("alpha: search passed sum of multiplicities");
  }
  const int below = result.alpha - 1;
  if (below < top) {
    result.lower = BoundCertificate::Trivial;
  } else {
    if (!previous || options.certify) previous = system_dim(scheme, below, options.certify.value_or(options.search));
    if (previous->actual_dim != 0) {
      throw std::logic_error("alpha: system at degree " + std::to_string(below) + " is not empty under " +
                             options.certify.value_or(options.search).to_string());
    }
    result.lower = BoundCertificate::General;
    result.below = std::move(previous);
  }
  if (options.certify && result.expected_at <= 0) {
    auto rep = system_dim(scheme, result.alpha, *options.certify);
    if (rep.actual_dim < 1) {
      throw std::logic_error("alpha: certification found degree " + std::to_string(result.alpha) + " empty");
    }
    result.upper = detail::upper_certificate(rep);
    result.at = std::move(rep);
  }
  return result;
}

struct AlphaReport {
  std::string field;
  std::vector<int> alphas;  ///< alpha(I(mZ)) for m = 1..k_max
  std::vector<int> diffs;   ///< alpha(mZ) - alpha((m-1)Z) for m = 2..k_max
  std::vector<AlphaResult> details;
  std::uint64_t seed = 0;
};

/// alpha(mZ) for m = 1..k_max, each search warm-started at alpha((m-1)Z) + 1.
inline AlphaReport alpha_sequence(const std::vector<ProjectivePoint>& points, int k_max,
                                  const AlphaOptions& options = {}) {
  if (k_max < 1) throw std::invalid_argument("alpha_sequence: k_max must be >= 1");
  AlphaReport report;
  report.field = points.empty() ? "rational" : points.front().field().to_string();
  report.seed = options.search.seed;
  int previous = 0;
  for (int m = 1; m <= k_max; ++m) {
    AlphaOptions opts = options;
    opts.lower_bound = std::max(options.lower_bound, previous + 1);
    auto res = alpha(FatPointScheme::uniform(points, m), opts);
    if (m > 1) report.diffs.push_back(res.alpha - previous);
    previous = res.alpha;
    report.alphas.push_back(res.alpha);
    report.details.push_back(std::move(res));
  }
  return report;
}

/// alpha(I(mZ)) - alpha(I(nZ)) for multiplicity vectors m >= n, m != n.
inline int alpha_diff(const std::vector<ProjectivePoint>& points, const std::vector<int>& m_vec,
                      const std::vector<int>& n_vec, const AlphaOptions& options = {}) {
  if (m_vec.size() != points.size() || n_vec.size() != points.size()) {
    throw std::invalid_argument("alpha_diff: vector length must equal the number of points");
  }
  bool differs = false;
  for (std::size_t i = 0; i < m_vec.size(); ++i) {
    if (m_vec[i] < n_vec[i]) throw std::invalid_argument("alpha_diff: m must dominate n component-wise");
    differs |= m_vec[i] != n_vec[i];
  }
  if (!differs) throw std::invalid_argument("alpha_diff: m and n are equal");
  const int upper = alpha(FatPointScheme(points, m_vec), options).alpha;
  // The zero scheme has the unit ideal, so its initial degree is 0.
  const bool n_zero = std::all_of(n_vec.begin(), n_vec.end(), [](int v) { return v == 0; });
  const int lower = n_zero ? 0 : alpha(FatPointScheme(points, n_vec), options).alpha;
  return upper - lower;
}

}  // namespace fatpoints
