#pragma once

/**
 * @file geometry.hpp
 * @brief Exact incidence predicates on finite point sets in the plane.
 */

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/poly.hpp"

namespace fatpoints {

/// Line a*x + b*y + c*z = 0 with the first nonzero coefficient scaled to 1.
class Line {
 public:
  Line(Scalar a, Scalar b, Scalar c) : coeffs_{std::move(a), std::move(b), std::move(c)} {
    require_same_field(coeffs_[0].field(), coeffs_[1].field());
    require_same_field(coeffs_[0].field(), coeffs_[2].field());
    int first = -1;
    for (int i = 0; i < 3; ++i) {
      if (!coeffs_[static_cast<std::size_t>(i)].is_zero()) {
        first = i;
        break;
      }
    }
    if (first < 0) throw std::invalid_argument("Line: all coefficients zero");
    const Scalar s = coeffs_[static_cast<std::size_t>(first)];
    for (auto& c : coeffs_) c /= s;
  }

  /// The line through two distinct points (cross product).
  static Line through(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (p == q) throw std::invalid_argument("Line::through: points coincide");
    return Line(p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]);
  }

  const std::array<Scalar, 3>& coeffs() const { return coeffs_; }
  Field field() const { return coeffs_[0].field(); }

  bool contains(const ProjectivePoint& p) const {
    return (coeffs_[0] * p[0] + coeffs_[1] * p[1] + coeffs_[2] * p[2]).is_zero();
  }

  /// Intersection point; the lines must be distinct.
  ProjectivePoint meet(const Line& o) const {
    if (*this == o) throw std::invalid_argument("Line::meet: identical lines");
    const auto& a = coeffs_;
    const auto& b = o.coeffs_;
    return ProjectivePoint(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
  }

  HomoPoly to_poly() const { return HomoPoly::linear(coeffs_[0], coeffs_[1], coeffs_[2]); }

  std::string to_string() const {
    return "[" + coeffs_[0].to_string() + "," + coeffs_[1].to_string() + "," + coeffs_[2].to_string() + "]";
  }

  friend bool operator==(const Line& a, const Line& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator<(const Line& a, const Line& b) {
    return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end(),
                                        scalar_less);
  }

 private:
  std::array<Scalar, 3> coeffs_;
};

namespace detail {

/// Right kernel of a small dense matrix over the scalars' field.
inline std::vector<std::vector<Scalar>> scalar_kernel(std::vector<std::vector<Scalar>> m, std::size_t cols,
                                                      const Field& field) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = m.size();
    for (std::size_t r = rank; r < m.size(); ++r) {
      if (!m[r][c].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    const Scalar inv = Scalar::one(field) / m[rank][c];
    for (std::size_t j = c; j < cols; ++j) m[rank][j] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      const Scalar f = m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, Scalar::zero(field));
    v[free] = Scalar::one(field);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline void require_common_field(const std::vector<ProjectivePoint>& points) {
  for (const auto& p : points) require_same_field(points.front().field(), p.field());
}

}  // namespace detail

/// A common line of all points. For a single point (or repeated copies of
/// one point) the first kernel vector of its coordinate row is returned.
inline std::optional<Line> are_collinear(const std::vector<ProjectivePoint>& points) {
  if (points.empty()) throw std::invalid_argument("are_collinear: no points");
  detail::require_common_field(points);
  const Field field = points.front().field();
  std::vector<std::vector<Scalar>> rows;
  for (const auto& p : points) rows.push_back({p[0], p[1], p[2]});
  const auto ker = detail::scalar_kernel(rows, 3, field);
  if (ker.empty()) return std::nullopt;
  return Line(ker[0][0], ker[0][1], ker[0][2]);
}

/// A conic (possibly degenerate) through all points, from the kernel of the
/// r x 6 Veronese matrix; the first kernel vector is returned.
inline std::optional<HomoPoly> common_conic(const std::vector<ProjectivePoint>& points) {
  if (points.empty()) throw std::invalid_argument("common_conic: no points");
  detail::require_common_field(points);
  const Field field = points.front().field();
  const auto basis = monomial_basis(2);
  std::vector<std::vector<Scalar>> rows;
  for (const auto& p : points) {
    std::vector<Scalar> row;
    for (const auto& e : basis) row.push_back(p[0].pow(e[0]) * p[1].pow(e[1]) * p[2].pow(e[2]));
    rows.push_back(std::move(row));
  }
  const auto ker = detail::scalar_kernel(rows, 6, field);
  if (ker.empty()) return std::nullopt;
  return HomoPoly::from_dense(field, 2, ker[0]);
}

/// Distinct lines spanned by pairs of points, each with the sorted indices
/// of the points it contains. Sorted by line for determinism.
inline std::vector<std::pair<Line, std::vector<std::size_t>>> spanned_lines(
    const std::vector<ProjectivePoint>& points) {
  std::map<Line, std::set<std::size_t>> lines;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) continue;
      Line l = Line::through(points[i], points[j]);
      if (lines.count(l)) continue;
      std::set<std::size_t> on;
      for (std::size_t k = 0; k < points.size(); ++k) {
        if (l.contains(points[k])) on.insert(k);
      }
      lines.emplace(std::move(l), std::move(on));
    }
  }
  std::vector<std::pair<Line, std::vector<std::size_t>>> out;
  for (auto& [l, on] : lines) out.emplace_back(l, std::vector<std::size_t>(on.begin(), on.end()));
  return out;
}

struct ArrangementWitness {
  std::vector<Line> lines;
  /// incidence[i]: indices into `lines` of the lines through point i.
  std::vector<std::vector<std::size_t>> incidence;
};

struct ArrangementSearch {
  std::optional<ArrangementWitness> witness;
  /// False when the clique enumeration hit its budget before finishing.
  bool exhaustive = true;
  std::size_t candidates = 0;
};

namespace detail {

inline ArrangementWitness make_witness(const std::vector<ProjectivePoint>& points, std::vector<Line> lines) {
  ArrangementWitness w;
  w.lines = std::move(lines);
  w.incidence.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t l = 0; l < w.lines.size(); ++l) {
      if (w.lines[l].contains(points[i])) w.incidence[i].push_back(l);
    }
  }
  return w;
}

}  // namespace detail

/// Looks for lines, each through >= 2 of the points, such that every point
/// lies on at least two of them and every pairwise intersection of the chosen
/// lines is one of the points. Lines through fewer than two points are never
/// considered, so a negative answer is only as strong as that restriction.
///
/// Any subset of a valid choice has pairwise intersections inside the set, so
/// the valid choices are the covering cliques of the graph "two candidate
/// lines meet at a point of the set"; maximal cliques are enumerated
/// (Bron-Kerbosch with pivoting) and the first covering one is pruned to a
/// minimal covering subset.
inline ArrangementSearch search_line_arrangement(const std::vector<ProjectivePoint>& points,
                                                 std::size_t budget = 1'000'000) {
  if (points.size() < 2) throw std::invalid_argument("detect_line_arrangement: needs at least 2 points");
  detail::require_common_field(points);
  const auto cand = spanned_lines(points);
  const std::size_t n = cand.size();
  ArrangementSearch result;
  result.candidates = n;
  if (n < 2) return result;

  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      // Distinct lines sharing a point of the set meet exactly there.
      const auto& pa = cand[a].second;
      const auto& pb = cand[b].second;
      std::vector<std::size_t> common;
      std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(common));
      adj[a][b] = adj[b][a] = !common.empty();
    }
  }

  auto covers = [&](const std::vector<std::size_t>& clique) {
    std::vector<int> count(points.size(), 0);
    for (auto l : clique) {
      for (auto p : cand[l].second) ++count[p];
    }
    return std::all_of(count.begin(), count.end(), [](int c) { return c >= 2; });
  };

  std::optional<std::vector<std::size_t>> found;
  std::size_t steps = 0;
  std::function<void(std::vector<std::size_t>&, std::vector<std::size_t>, std::vector<std::size_t>)> bk =
      [&](std::vector<std::size_t>& r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
        if (found || ++steps > budget) return;
        if (p.empty() && x.empty()) {
          if (covers(r)) found = r;
          return;
        }
        std::size_t pivot = p.empty() ? x.front() : p.front();
        std::size_t best = 0;
        for (const auto* set : {&p, &x}) {
          for (auto u : *set) {
            std::size_t deg = 0;
            for (auto v : p) deg += adj[u][v];
            if (deg > best) {
              best = deg;
              pivot = u;
            }
          }
        }
        const std::vector<std::size_t> branch = [&] {
          std::vector<std::size_t> out;
          for (auto v : p) {
            if (!adj[pivot][v]) out.push_back(v);
          }
          return out;
        }();
        for (auto v : branch) {
          std::vector<std::size_t> np, nx;
          for (auto u : p) {
            if (adj[v][u]) np.push_back(u);
          }
          for (auto u : x) {
            if (adj[v][u]) nx.push_back(u);
          }
          r.push_back(v);
          bk(r, std::move(np), std::move(nx));
          r.pop_back();
          if (found || steps > budget) return;
          p.erase(std::find(p.begin(), p.end(), v));
          x.push_back(v);
        }
      };
  std::vector<std::size_t> r, all(n), none;
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  bk(r, all, none);
  result.exhaustive = steps <= budget;
  if (!found) return result;

  // Drop lines while coverage survives, poorest lines first.
  std::vector<std::size_t> clique = *found;
  std::stable_sort(clique.begin(), clique.end(),
                   [&](std::size_t a, std::size_t b) { return cand[a].second.size() < cand[b].second.size(); });
  for (std::size_t i = 0; i < clique.size();) {
    std::vector<std::size_t> trial = clique;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (covers(trial)) {
      clique = std::move(trial);
    } else {
      ++i;
    }
  }
  std::sort(clique.begin(), clique.end());
  std::vector<Line> lines;
  for (auto l : clique) lines.push_back(cand[l].first);
  result.witness = detail::make_witness(points, std::move(lines));
  return result;
}

inline std::optional<ArrangementWitness> detect_line_arrangement(const std::vector<ProjectivePoint>& points) {
  return search_line_arrangement(points).witness;
}

struct StarWitness {
  int p = 0;
  std::vector<Line> lines;
};

/// Z is the set of all C(p,2) pairwise intersections of p lines, no three
/// of them concurrent.
inline std::optional<StarWitness> is_star_configuration(const std::vector<ProjectivePoint>& points) {
  if (points.size() < 3) throw std::invalid_argument("is_star_configuration: needs at least 3 points");
  detail::require_common_field(points);
  const std::size_t r = points.size();
  std::size_t p = 2;
  while (p * (p - 1) / 2 < r) ++p;
  if (p * (p - 1) / 2 != r) return std::nullopt;
  std::vector<std::pair<Line, std::vector<std::size_t>>> rich;
  for (auto& entry : spanned_lines(points)) {
    if (entry.second.size() == p - 1) rich.push_back(std::move(entry));
  }
  if (rich.size() < p) return std::nullopt;
  // Choose p of the rich lines; each point must lie on exactly two of them.
  std::vector<std::size_t> chosen;
  std::optional<StarWitness> out;
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (out) return;
    if (chosen.size() == p) {
      std::vector<int> count(r, 0);
      for (auto l : chosen) {
        for (auto i : rich[l].second) ++count[i];
      }
      if (std::all_of(count.begin(), count.end(), [](int c) { return c == 2; })) {
        StarWitness w;
        w.p = static_cast<int>(p);
        for (auto l : chosen) w.lines.push_back(rich[l].first);
        out = std::move(w);
      }
      return;
    }
    for (std::size_t i = start; i < rich.size(); ++i) {
      chosen.push_back(i);
      choose(i + 1);
      chosen.pop_back();
    }
  };
  choose(0);
  return out;
}

/// Six points: the vertices of a triangle plus one further point on each
/// side, with no other three of them collinear.
inline bool is_type9(const std::vector<ProjectivePoint>& points) {
  if (points.size() != 6) return false;
  detail::require_common_field(points);
  std::vector<std::pair<Line, std::vector<std::size_t>>> rich;
  for (auto& entry : spanned_lines(points)) {
    if (entry.second.size() >= 3) rich.push_back(std::move(entry));
  }
  if (rich.size() != 3) return false;
  for (const auto& [l, on] : rich) {
    if (on.size() != 3) return false;
  }
  std::set<std::size_t> vertices;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      std::vector<std::size_t> common;
      std::set_intersection(rich[a].second.begin(), rich[a].second.end(), rich[b].second.begin(),
                            rich[b].second.end(), std::back_inserter(common));
      if (common.size() != 1) return false;
      vertices.insert(common.front());
    }
  }
  return vertices.size() == 3;
}

namespace detail {

/// A form over F_p flattened for fast repeated evaluation.
struct FpForm {
  std::uint64_t p;
  std::vector<std::pair<Exponent, std::uint64_t>> terms;

  explicit FpForm(const HomoPoly& f) : p(f.field().characteristic()) {
    for (const auto& [e, c] : f.terms()) terms.emplace_back(e, c.as_residue());
  }

  std::uint64_t operator()(const std::array<std::vector<std::uint64_t>, 3>& powers) const {
    std::uint64_t s = 0;
    for (const auto& [e, c] : terms) {
      s = (s + c * powers[0][static_cast<std::size_t>(e[0])] % p * powers[1][static_cast<std::size_t>(e[1])] % p *
                   powers[2][static_cast<std::size_t>(e[2])]) %
          p;
    }
    return s;
  }
};

/// Calls visit(x, y, z) once for every point of P^2(F_p), normalized.
template <typename Visit>
void for_each_fp_point(std::uint64_t p, Visit&& visit) {
  for (std::uint64_t x = 0; x < p; ++x) {
    for (std::uint64_t y = 0; y < p; ++y) visit(x, y, std::uint64_t{1});
  }
  for (std::uint64_t x = 0; x < p; ++x) visit(x, std::uint64_t{1}, std::uint64_t{0});
  visit(std::uint64_t{1}, std::uint64_t{0}, std::uint64_t{0});
}

inline void fill_powers(std::array<std::vector<std::uint64_t>, 3>& powers, std::uint64_t x, std::uint64_t y,
                        std::uint64_t z, int d, std::uint64_t p) {
  const std::uint64_t c[3] = {x, y, z};
  for (std::size_t k = 0; k < 3; ++k) {
    powers[k].assign(static_cast<std::size_t>(d) + 1, 1 % p);
    for (int e = 1; e <= d; ++e) powers[k][static_cast<std::size_t>(e)] = powers[k][static_cast<std::size_t>(e) - 1] * c[k] % p;
  }
}

}  // namespace detail

/// All F_p-rational points of P^2 at which every first partial of f vanishes,
/// sorted. Needs p > deg f so that Euler's relation forces f itself to vanish.
inline std::vector<ProjectivePoint> singular_points_over_Fp(const HomoPoly& f) {
  const Field field = f.field();
  if (!field.is_prime_field()) throw FieldMismatch("singular_points_over_Fp: polynomial must be over F_p");
  const std::uint64_t p = field.characteristic();
  if (f.degree() < 1) throw std::invalid_argument("singular_points_over_Fp: degree must be positive");
  if (p <= static_cast<std::uint64_t>(f.degree())) {
    throw CharacteristicTooSmall("singular_points_over_Fp needs p > degree");
  }
  const detail::FpForm fx(partial_derivative(f, 0)), fy(partial_derivative(f, 1)), fz(partial_derivative(f, 2));
  std::vector<ProjectivePoint> out;
  std::array<std::vector<std::uint64_t>, 3> powers;
  detail::for_each_fp_point(p, [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    detail::fill_powers(powers, x, y, z, f.degree(), p);
    if (fx(powers) == 0 && fy(powers) == 0 && fz(powers) == 0) {
      out.emplace_back(Scalar::residue(x, p), Scalar::residue(y, p), Scalar::residue(z, p));
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// All F_p-rational points on the curve f = 0, sorted.
inline std::vector<ProjectivePoint> zeros_over_Fp(const HomoPoly& f) {
  const Field field = f.field();
  if (!field.is_prime_field()) throw FieldMismatch("zeros_over_Fp: polynomial must be over F_p");
  const std::uint64_t p = field.characteristic();
  const detail::FpForm form(f);
  std::vector<ProjectivePoint> out;
  std::array<std::vector<std::uint64_t>, 3> powers;
  detail::for_each_fp_point(p, [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    detail::fill_powers(powers, x, y, z, f.degree(), p);
    if (form(powers) == 0) out.emplace_back(Scalar::residue(x, p), Scalar::residue(y, p), Scalar::residue(z, p));
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fatpoints
