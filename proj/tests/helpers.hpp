#pragma once

// Shared test fixtures: random forms, conversions to the oracle's plain
// representations, and the seeded property suites run by both the unit
// tests and the acceptance binary.

#include <sstream>
#include <string>
#include <vector>

#include "fatpoints/fatpoints.hpp"
#include "oracle.hpp"

namespace testing_support {

using namespace fatpoints;

inline Scalar random_scalar(const Field& f, Rng& rng, long long height) {
  if (f.is_prime_field()) {
    return Scalar::residue(static_cast<std::uint64_t>(rng.uniform(0, static_cast<long long>(f.characteristic()) - 1)),
                           f.characteristic());
  }
  return Scalar::from_int(f, rng.uniform(-height, height));
}

inline HomoPoly random_form(const Field& f, int d, Rng& rng, long long height = 5) {
  HomoPoly g(f, d);
  for (const auto& e : monomial_basis(d)) g.set(e, random_scalar(f, rng, height));
  return g;
}

/// A random line through p (never the zero form).
inline HomoPoly random_line_through(const ProjectivePoint& p, Rng& rng) {
  const Field f = p.field();
  for (;;) {
    // Cross product of p with a random point q != p.
    const Scalar x = random_scalar(f, rng, 9), y = random_scalar(f, rng, 9),
                 z = f.is_prime_field() ? random_scalar(f, rng, 9) : Scalar::from_int(f, rng.uniform(1, 9));
    if (x.is_zero() && y.is_zero() && z.is_zero()) continue;
    const ProjectivePoint q(x, y, z);
    if (q == p) continue;
    const Line l = Line::through(p, q);
    return l.to_poly();
  }
}

inline std::array<mpq_class, 3> to_q(const ProjectivePoint& p) {
  return {p[0].as_rational(), p[1].as_rational(), p[2].as_rational()};
}

inline std::vector<std::array<mpq_class, 3>> to_q(const std::vector<ProjectivePoint>& pts) {
  std::vector<std::array<mpq_class, 3>> out;
  for (const auto& p : pts) out.push_back(to_q(p));
  return out;
}

inline oracle::ModPoint to_mod(const ProjectivePoint& p) {
  return {{static_cast<long long>(p[0].as_residue()), static_cast<long long>(p[1].as_residue()),
           static_cast<long long>(p[2].as_residue())}};
}

/// Distinct random points with coordinates in [-h, h] (Q) or F_p.
inline std::vector<ProjectivePoint> random_points(const Field& f, int r, Rng& rng, long long h = 3) {
  return random_small_points(r, f, h, rng);
}

/// All order-(m-1) partial derivatives of f vanish at p (iterated derivatives).
inline bool derivatives_vanish(const HomoPoly& f, const ProjectivePoint& p, int m) {
  if (m <= 0) return true;
  std::vector<HomoPoly> layer{f};
  for (int order = 0; order < m - 1; ++order) {
    std::vector<HomoPoly> next;
    for (const auto& g : layer) {
      if (g.degree() == 0) {
        next.push_back(HomoPoly(g.field(), 0));  // derivative of a constant
        continue;
      }
      for (int v = 0; v < 3; ++v) next.push_back(partial_derivative(g, v));
    }
    layer = std::move(next);
  }
  for (const auto& g : layer) {
    if (!g.is_zero() && !evaluate(g, p).is_zero()) return false;
  }
  return true;
}

struct SuiteResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0; }
};

inline std::string describe(const std::vector<ProjectivePoint>& pts) {
  std::ostringstream os;
  for (const auto& p : pts) os << p.to_string() << " ";
  return os.str();
}

/// Strict growth, subadditivity and alpha(kZ) - alpha(Z) >= k - 1 on random
/// configurations, alpha sequences up to k = 6.
struct SequenceSuites {
  SuiteResult growth, subadditive, eq1;
};

inline SequenceSuites run_sequence_suites(int cases, std::uint64_t seed) {
  SequenceSuites s;
  for (int t = 0; t < cases; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const int r = static_cast<int>(rng.uniform(1, 7));
    const auto pts = random_points(Field::rational(), r, rng, 4);
    const auto a = alpha_sequence(pts, 6).alphas;
    ++s.growth.cases;
    ++s.subadditive.cases;
    ++s.eq1.cases;
    for (std::size_t m = 1; m < a.size(); ++m) {
      if (a[m] < a[m - 1] + 1) s.growth.fail("alpha not strictly increasing at " + describe(pts));
    }
    for (std::size_t m = 1; m <= a.size(); ++m) {
      for (std::size_t n = 1; m + n <= a.size(); ++n) {
        if (a[m + n - 1] > a[m - 1] + a[n - 1]) s.subadditive.fail("subadditivity fails at " + describe(pts));
      }
    }
    for (std::size_t k = 2; k <= a.size(); ++k) {
      if (a[k - 1] - a[0] < static_cast<int>(k) - 1) s.eq1.fail("alpha_{k,1} < k-1 at " + describe(pts));
    }
  }
  return s;
}

/// actual_dim >= max(expected_dim, 0) under exact rank, and the exact rank
/// agrees with the independent rational oracle.
inline SuiteResult run_superabundance_suite(int cases, std::uint64_t seed) {
  SuiteResult s;
  for (int t = 0; t < cases; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const int r = static_cast<int>(rng.uniform(1, 7));
    const auto pts = random_points(Field::rational(), r, rng, 3);
    std::vector<int> mults;
    for (int i = 0; i < r; ++i) mults.push_back(static_cast<int>(rng.uniform(0, 3)));
    mults[0] = std::max(mults[0], 1);
    const int d = static_cast<int>(rng.uniform(1, 7));
    const FatPointScheme scheme(pts, mults);
    const auto rep = system_dim(scheme, d, RankStrategy::exact());
    ++s.cases;
    if (rep.actual_dim < std::max<long long>(rep.expected_dim, 0)) s.fail("negative superabundance at " + describe(pts));
    if (rep.actual_dim != oracle::dim_q(to_q(pts), mults, d)) s.fail("exact rank disagrees with oracle at " + describe(pts));
  }
  return s;
}

/// system_dim over F_2 / F_3 against enumeration of every form, d <= 3,
/// restricted to characteristics the derivative conditions support.
inline SuiteResult run_enumeration_suite(int cases, std::uint64_t seed) {
  SuiteResult s;
  for (int t = 0; t < cases; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const std::uint64_t q = rng.uniform(0, 1) ? 3 : 2;
    const Field f = Field::prime(q);
    const int d = static_cast<int>(rng.uniform(0, 3));
    const int r = static_cast<int>(rng.uniform(1, 5));
    const auto pts = random_points(f, r, rng);
    // Double points only where p > d; otherwise simple points.
    const int top = (q > static_cast<std::uint64_t>(d) && q > 2) ? 2 : 1;
    std::vector<int> mults;
    for (int i = 0; i < r; ++i) mults.push_back(static_cast<int>(rng.uniform(0, top)));
    mults[0] = std::max(mults[0], 1);
    const auto rep = system_dim(FatPointScheme(pts, mults), d);
    std::vector<oracle::ModPoint> mp;
    for (const auto& p : pts) mp.push_back(to_mod(p));
    ++s.cases;
    const long long want = oracle::dim_by_enumeration(mp, mults, d, static_cast<long long>(q));
    if (rep.actual_dim != want) {
      s.fail("F_" + std::to_string(q) + " d=" + std::to_string(d) + " dim " + std::to_string(rep.actual_dim) +
             " vs enumeration " + std::to_string(want) + " at " + describe(pts));
    }
  }
  return s;
}

/// order_of_vanishing(f, P) >= m iff all order-(m-1) partials vanish at P,
/// for random f of degree <= 6 with a forced singularity at P, over Q and F_p
/// with p > d. Also checks Leibniz over Q.
struct OrderSuites {
  SuiteResult derivative, leibniz;
};

inline OrderSuites run_order_suites(int cases, std::uint64_t seed) {
  OrderSuites s;
  for (int t = 0; t < cases; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const int d = static_cast<int>(rng.uniform(1, 6));
    const int which = static_cast<int>(rng.uniform(0, 2));
    const Field f = which == 0 ? Field::rational() : Field::prime(which == 1 ? 7 : 11);
    const auto p = random_points(f, 1, rng, 5).front();
    const int forced = static_cast<int>(rng.uniform(0, d));
    HomoPoly g = random_form(f, d - forced, rng);
    for (int i = 0; i < forced; ++i) g = g * random_line_through(p, rng);
    const int ord = order_of_vanishing(g, p);
    ++s.derivative.cases;
    for (int m = 1; m <= d; ++m) {
      if ((ord >= m) != derivatives_vanish(g, p, m)) {
        s.derivative.fail("order " + std::to_string(ord) + " vs derivatives at m=" + std::to_string(m) + " for " +
                          g.to_string() + " at " + p.to_string());
      }
    }
    if (!g.is_zero() && ord < forced) s.derivative.fail("forced order not reached for " + g.to_string());

    // Leibniz over Q.
    const auto q = random_points(Field::rational(), 1, rng, 5).front();
    HomoPoly a = random_form(Field::rational(), static_cast<int>(rng.uniform(0, 3)), rng);
    HomoPoly b = random_form(Field::rational(), static_cast<int>(rng.uniform(0, 3)), rng);
    for (int i = 0, n = static_cast<int>(rng.uniform(0, 2)); i < n; ++i) a = a * random_line_through(q, rng);
    for (int i = 0, n = static_cast<int>(rng.uniform(0, 2)); i < n; ++i) b = b * random_line_through(q, rng);
    ++s.leibniz.cases;
    if (a.is_zero() || b.is_zero()) continue;
    const int lhs = order_of_vanishing(a * b, q);
    const int rhs = order_of_vanishing(a, q) + order_of_vanishing(b, q);
    if (lhs != rhs) s.leibniz.fail("Leibniz fails for " + a.to_string() + " * " + b.to_string());
  }
  return s;
}

}  // namespace testing_support
