#pragma once

/**
 * @file poly.hpp
 * @brief Points of the projective plane and homogeneous polynomials in x, y, z.
 */

#include <algorithm>
#include <array>
#include <climits>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/field.hpp"

namespace fatpoints {

/// Exponents (a, b, c) of the monomial x^a y^b z^c.
using Exponent = std::array<int, 3>;

/// Order of vanishing of the zero polynomial.
inline constexpr int kInfiniteOrder = INT_MAX;

/// All exponent triples of total degree d in graded lexicographic order with
/// x > y > z: x^d, x^{d-1}y, x^{d-1}z, x^{d-2}y^2, ..., z^d.
inline std::vector<Exponent> monomial_basis(int d) {
  if (d < 0) throw std::invalid_argument("monomial_basis: negative degree");
  std::vector<Exponent> basis;
  basis.reserve(static_cast<std::size_t>((d + 1) * (d + 2) / 2));
  for (int a = d; a >= 0; --a) {
    for (int b = d - a; b >= 0; --b) basis.push_back({a, b, d - a - b});
  }
  return basis;
}

inline long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (long long i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

/// Total order on scalars of one field, used only for canonical sorting.
inline bool scalar_less(const Scalar& a, const Scalar& b) {
  if (a.is_rational() != b.is_rational()) return a.is_rational();
  if (a.is_rational()) return a.as_rational() < b.as_rational();
  if (a.modulus() != b.modulus()) return a.modulus() < b.modulus();
  return a.as_residue() < b.as_residue();
}

class ProjectivePoint {
 public:
  ProjectivePoint(Scalar x, Scalar y, Scalar z) : coords_{std::move(x), std::move(y), std::move(z)} {
    require_same_field(coords_[0].field(), coords_[1].field());
    require_same_field(coords_[0].field(), coords_[2].field());
    int last = -1;
    for (int i = 2; i >= 0; --i) {
      if (!coords_[i].is_zero()) {
        last = i;
        break;
      }
    }
    if (last < 0) throw std::invalid_argument("projective point with all coordinates zero");
    const Scalar scale = coords_[last];
    for (auto& c : coords_) c /= scale;
  }

  static ProjectivePoint from_ints(const Field& f, long long x, long long y, long long z) {
    return ProjectivePoint(Scalar::from_int(f, x), Scalar::from_int(f, y), Scalar::from_int(f, z));
  }

  const std::array<Scalar, 3>& coords() const { return coords_; }
  const Scalar& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  Field field() const { return coords_[0].field(); }

  /// Index of the coordinate normalized to 1.
  int chart() const {
    for (int i = 2; i >= 0; --i) {
      if (!coords_[static_cast<std::size_t>(i)].is_zero()) return i;
    }
    return 2;
  }

  /// Primitive integer vector on the same line through the origin (Q only).
  std::array<mpz_class, 3> integer_representative() const {
    if (!coords_[0].is_rational()) throw FieldMismatch("integer_representative needs a rational point");
    mpz_class lcm = 1;
    for (const auto& c : coords_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.as_rational().get_den_mpz_t());
    std::array<mpz_class, 3> v;
    mpz_class g = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      const mpq_class& q = coords_[i].as_rational();
      v[i] = q.get_num() * (lcm / q.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
    }
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return v;
  }

  std::string to_string() const {
    return "(" + coords_[0].to_string() + ":" + coords_[1].to_string() + ":" + coords_[2].to_string() + ")";
  }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.coords_ == b.coords_; }

  friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end(),
                                        scalar_less);
  }

 private:
  std::array<Scalar, 3> coords_;
};

/// Homogeneous polynomial in x, y, z over a single field. Only nonzero
/// coefficients are stored; the zero polynomial keeps its declared degree.
class HomoPoly {
 public:
  // Descending lex on exponents is graded lex once the degree is fixed.
  using Terms = std::map<Exponent, Scalar, std::greater<Exponent>>;

  HomoPoly(Field field, int degree) : field_(field), degree_(degree) {
    if (degree < 0) throw std::invalid_argument("HomoPoly: negative degree");
  }

  static HomoPoly monomial(const Scalar& coeff, const Exponent& e) {
    HomoPoly f(coeff.field(), e[0] + e[1] + e[2]);
    f.set(e, coeff);
    return f;
  }

  static HomoPoly linear(const Scalar& a, const Scalar& b, const Scalar& c) {
    HomoPoly f(a.field(), 1);
    f.set({1, 0, 0}, a);
    f.set({0, 1, 0}, b);
    f.set({0, 0, 1}, c);
    return f;
  }

  /// Builds a form from coefficients listed in monomial_basis(degree) order.
  static HomoPoly from_dense(const Field& field, int degree, const std::vector<Scalar>& coeffs) {
    const auto basis = monomial_basis(degree);
    if (coeffs.size() != basis.size()) throw std::invalid_argument("from_dense: coefficient count mismatch");
    HomoPoly f(field, degree);
    for (std::size_t i = 0; i < basis.size(); ++i) f.set(basis[i], coeffs[i]);
    return f;
  }

  const Field& field() const { return field_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  Scalar coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }

  void set(const Exponent& e, const Scalar& c) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree_) {
      throw std::invalid_argument("HomoPoly::set: exponent does not match degree");
    }
    require_same_field(field_, c.field());
    if (c.is_zero()) {
      terms_.erase(e);
    } else {
      terms_.insert_or_assign(e, c);
    }
  }

  /// Coefficients in monomial_basis(degree) order.
  std::vector<Scalar> dense() const {
    std::vector<Scalar> out;
    for (const auto& e : monomial_basis(degree_)) out.push_back(coefficient(e));
    return out;
  }

  friend HomoPoly operator+(const HomoPoly& f, const HomoPoly& g) {
    require_same_field(f.field_, g.field_);
    if (f.degree_ != g.degree_ && !f.is_zero() && !g.is_zero()) {
      throw std::invalid_argument("HomoPoly: adding forms of different degree");
    }
    HomoPoly h = f.is_zero() ? HomoPoly(g.field_, g.degree_) : f;
    for (const auto& [e, c] : g.terms_) h.set(e, h.coefficient(e) + c);
    return h;
  }

  HomoPoly operator-() const {
    HomoPoly h(field_, degree_);
    for (const auto& [e, c] : terms_) h.terms_.emplace(e, -c);
    return h;
  }

  friend HomoPoly operator-(const HomoPoly& f, const HomoPoly& g) { return f + (-g); }

  friend HomoPoly operator*(const HomoPoly& f, const HomoPoly& g) {
    require_same_field(f.field_, g.field_);
    HomoPoly h(f.field_, f.degree_ + g.degree_);
    for (const auto& [e1, c1] : f.terms_) {
      for (const auto& [e2, c2] : g.terms_) {
        const Exponent e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
        h.set(e, h.coefficient(e) + c1 * c2);
      }
    }
    return h;
  }

  friend HomoPoly operator*(const Scalar& s, const HomoPoly& f) {
    HomoPoly h(f.field_, f.degree_);
    for (const auto& [e, c] : f.terms_) h.set(e, s * c);
    return h;
  }

  HomoPoly pow(unsigned n) const {
    HomoPoly result = monomial(Scalar::one(field_), {0, 0, 0});
    for (unsigned i = 0; i < n; ++i) result = result * *this;
    return result;
  }

  /// Equality of forms; zero polynomials compare equal regardless of degree.
  friend bool operator==(const HomoPoly& f, const HomoPoly& g) {
    if (!(f.field_ == g.field_)) return false;
    if (f.is_zero() && g.is_zero()) return true;
    return f.degree_ == g.degree_ && f.terms_ == g.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    static const char* names = "xyz";
    for (const auto& [e, c] : terms_) {
      std::string coeff = c.to_string();
      bool negative = !coeff.empty() && coeff[0] == '-';
      if (negative) coeff = coeff.substr(1);
      out << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
      first = false;
      const bool constant = e[0] + e[1] + e[2] == 0;
      if (coeff != "1" || constant) out << coeff << (constant ? "" : "*");
      bool first_var = true;
      for (int v = 0; v < 3; ++v) {
        if (e[static_cast<std::size_t>(v)] == 0) continue;
        if (!first_var) out << "*";
        first_var = false;
        out << names[v];
        if (e[static_cast<std::size_t>(v)] > 1) out << "^" << e[static_cast<std::size_t>(v)];
      }
    }
    return out.str();
  }

 private:
  Field field_;
  int degree_;
  Terms terms_;
};

inline Scalar evaluate(const HomoPoly& f, const ProjectivePoint& p) {
  require_same_field(f.field(), p.field());
  Scalar sum = Scalar::zero(f.field());
  // Power tables avoid recomputing coordinate powers per monomial.
  std::array<std::vector<Scalar>, 3> powers;
  for (std::size_t v = 0; v < 3; ++v) {
    powers[v].push_back(Scalar::one(f.field()));
    for (int i = 1; i <= f.degree(); ++i) powers[v].push_back(powers[v].back() * p[static_cast<int>(v)]);
  }
  for (const auto& [e, c] : f.terms()) {
    sum += c * powers[0][static_cast<std::size_t>(e[0])] * powers[1][static_cast<std::size_t>(e[1])] *
           powers[2][static_cast<std::size_t>(e[2])];
  }
  return sum;
}

/// Formal partial derivative with respect to x (0), y (1) or z (2).
inline HomoPoly partial_derivative(const HomoPoly& f, int var) {
  if (var < 0 || var > 2) throw std::invalid_argument("partial_derivative: variable index must be 0, 1 or 2");
  if (f.degree() == 0) throw std::invalid_argument("partial_derivative: degree-0 input");
  HomoPoly g(f.field(), f.degree() - 1);
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [e, c] : f.terms()) {
    if (e[v] == 0) continue;
    Exponent e2 = e;
    --e2[v];
    g.set(e2, c * Scalar::from_int(f.field(), e[v]));
  }
  return g;
}

/// Coefficients of the local expansion of f at p in the affine chart of p,
/// keyed by the (u, v) exponents of the two translated affine coordinates.
/// Valid in every characteristic (binomial expansion, no factorials).
inline std::map<std::pair<int, int>, Scalar> local_expansion(const HomoPoly& f, const ProjectivePoint& p) {
  require_same_field(f.field(), p.field());
  const Field& field = f.field();
  const int chart = p.chart();
  std::array<int, 2> other{};
  for (int i = 0, k = 0; i < 3; ++i) {
    if (i != chart) other[static_cast<std::size_t>(k++)] = i;
  }
  const int d = f.degree();
  std::array<std::vector<Scalar>, 2> powers;
  for (std::size_t t = 0; t < 2; ++t) {
    powers[t].push_back(Scalar::one(field));
    for (int i = 1; i <= d; ++i) powers[t].push_back(powers[t].back() * p[other[t]]);
  }
  std::map<std::pair<int, int>, Scalar> out;
  for (const auto& [e, c] : f.terms()) {
    const int ea = e[static_cast<std::size_t>(other[0])];
    const int eb = e[static_cast<std::size_t>(other[1])];
    for (int i = 0; i <= ea; ++i) {
      const Scalar ci = c * Scalar::from_int(field, binomial(ea, i)) * powers[0][static_cast<std::size_t>(ea - i)];
      if (ci.is_zero()) continue;
      for (int k = 0; k <= eb; ++k) {
        const Scalar term = ci * Scalar::from_int(field, binomial(eb, k)) * powers[1][static_cast<std::size_t>(eb - k)];
        if (term.is_zero()) continue;
        auto [it, inserted] = out.try_emplace({i, k}, term);
        if (!inserted) it->second += term;
      }
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

/// Multiplicity of the curve f = 0 at p: the lowest total degree in the local
/// expansion after moving p to the origin of its affine chart.
inline int order_of_vanishing(const HomoPoly& f, const ProjectivePoint& p) {
  require_same_field(f.field(), p.field());
  if (f.is_zero()) return kInfiniteOrder;
  int best = kInfiniteOrder;
  for (const auto& [uv, c] : local_expansion(f, p)) best = std::min(best, uv.first + uv.second);
  return best;
}

}  // namespace fatpoints
