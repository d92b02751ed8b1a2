#pragma once

/**
 * @file configs.hpp
 * @brief Seeded generators for the point configuration families.
 *
 * Every generator is a pure function of its parameters and seed. Retry loops
 * draw attempt i from derive_seed(seed, i), so a rerun with the same seed
 * reproduces both the output and the number of attempts.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatpoints/geometry.hpp"
#include "fatpoints/linsys.hpp"
#include "fatpoints/random.hpp"

namespace fatpoints {

struct ConfigSpec {
  std::string family;
  int r = 0;
  /// Number of lines for star families; the prime for dual_hesse.
  int p = 0;
  int d = 0;
  int d2 = 0;
  /// Prime for the finite-field families (nodal curves).
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  long long height = 10000;
};

struct Configuration {
  std::vector<ProjectivePoint> points;
  std::vector<Line> lines;
  std::vector<HomoPoly> curves;
  int attempts = 1;
};

inline constexpr long long kDefaultHeight = 10000;
inline constexpr int kMaxAttempts = 10000;

inline std::vector<ProjectivePoint> collinear(int r) {
  if (r < 1) throw std::invalid_argument("collinear: r must be >= 1");
  const Field q = Field::rational();
  std::vector<ProjectivePoint> out;
  for (int i = 0; i < r; ++i) out.push_back(ProjectivePoint::from_ints(q, 0, i, 1));
  return out;
}

inline std::vector<ProjectivePoint> on_conic(int r) {
  if (r < 1) throw std::invalid_argument("on_conic: r must be >= 1");
  const Field q = Field::rational();
  std::vector<ProjectivePoint> out;
  for (long long t = 0; t < r; ++t) out.push_back(ProjectivePoint::from_ints(q, 1, t, t * t));
  return out;
}

namespace detail {

inline bool has_collinear_triple(const std::vector<ProjectivePoint>& pts) {
  for (const auto& [line, on] : spanned_lines(pts)) {
    if (on.size() >= 3) return true;
  }
  return false;
}

inline bool has_six_on_conic(const std::vector<ProjectivePoint>& pts) {
  const std::size_t n = pts.size();
  if (n < 6) return false;
  std::vector<std::size_t> idx(6);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == 6) {
      std::vector<ProjectivePoint> sub;
      for (auto i : idx) sub.push_back(pts[i]);
      return common_conic(sub).has_value();
    }
    for (std::size_t i = start; i + (6 - depth) <= n; ++i) {
      idx[depth] = i;
      if (rec(i + 1, depth + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

inline ProjectivePoint random_point(Rng& rng, long long height) {
  for (;;) {
    const long long x = rng.uniform(-height, height);
    const long long y = rng.uniform(-height, height);
    const long long z = rng.uniform(-height, height);
    if (x != 0 || y != 0 || z != 0) return ProjectivePoint::from_ints(Field::rational(), x, y, z);
  }
}

}  // namespace detail

/// Random integer points in [-H, H]^3. With `general_position` the result
/// also has no three points on a line and no six on a conic.
inline Configuration general_config(int r, std::uint64_t seed, long long height = kDefaultHeight,
                                    bool general_position = true) {
  if (r < 1) throw std::invalid_argument("general: r must be >= 1");
  if (height < 1) throw std::invalid_argument("general: height must be >= 1");
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<ProjectivePoint> pts;
    std::set<ProjectivePoint> seen;
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      auto p = detail::random_point(rng, height);
      ok = seen.insert(p).second;
      pts.push_back(std::move(p));
    }
    if (ok && general_position) ok = !detail::has_collinear_triple(pts) && !detail::has_six_on_conic(pts);
    if (ok) return {pts, {}, {}, attempt + 1};
  }
  throw std::runtime_error("general: no admissible configuration within the attempt budget");
}

inline std::vector<ProjectivePoint> general(int r, std::uint64_t seed, long long height = kDefaultHeight) {
  return general_config(r, seed, height).points;
}

/// Pairwise intersections of p random lines, ordered P_01, P_02, ..., P_{p-2,p-1};
/// lines[i] and lines[j] meet at the point for the pair (i, j).
inline Configuration star(int p, std::uint64_t seed, long long height = 100) {
  if (p < 3) throw std::invalid_argument("star: p must be >= 3");
  const Field q = Field::rational();
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<Line> lines;
    bool ok = true;
    for (int i = 0; i < p && ok; ++i) {
      const long long a = rng.uniform(-height, height), b = rng.uniform(-height, height),
                      c = rng.uniform(-height, height);
      if (a == 0 && b == 0 && c == 0) {
        ok = false;
        break;
      }
      Line l(Scalar::from_int(q, a), Scalar::from_int(q, b), Scalar::from_int(q, c));
      ok = std::find(lines.begin(), lines.end(), l) == lines.end();
      lines.push_back(std::move(l));
    }
    if (!ok) continue;
    std::vector<ProjectivePoint> pts;
    std::set<ProjectivePoint> seen;
    for (int i = 0; i < p && ok; ++i) {
      for (int j = i + 1; j < p && ok; ++j) {
        auto pt = lines[static_cast<std::size_t>(i)].meet(lines[static_cast<std::size_t>(j)]);
        ok = seen.insert(pt).second;  // a repeat means three concurrent lines
        pts.push_back(std::move(pt));
      }
    }
    if (ok) return {pts, lines, {}, attempt + 1};
  }
  throw std::runtime_error("star: no admissible arrangement within the attempt budget");
}

/// star(d) without the intersection point of its first two lines.
inline Configuration star_minus_one(int d, std::uint64_t seed) {
  if (d < 3) throw std::invalid_argument("star_minus_one: d must be >= 3");
  Configuration c = star(d, seed);
  c.points.erase(c.points.begin());
  return c;
}

/// The 12 points lying on at least three of the nine lines
/// x - w^a y, y - w^b z, x - w^c z over F_p, w a primitive cube root of 1.
inline Configuration dual_hesse(std::uint64_t p) {
  if (!is_prime(p) || p % 3 != 1 || p <= 10) {
    throw std::invalid_argument("dual_hesse: need a prime p = 1 mod 3 with p > 10");
  }
  std::uint64_t w = 1;
  for (std::uint64_t g = 2; g < p; ++g) {
    w = detail::powmod64(g, (p - 1) / 3, p);
    if (w != 1) break;
  }
  const std::uint64_t powers[3] = {1, w, w * w % p};
  auto s = [&](std::uint64_t v) { return Scalar::residue(v % p, p); };
  auto neg = [&](std::uint64_t v) { return Scalar::residue((p - v) % p, p); };
  std::vector<Line> lines;
  for (auto a : powers) lines.emplace_back(s(1), neg(a), s(0));
  for (auto b : powers) lines.emplace_back(s(0), s(1), neg(b));
  for (auto c : powers) lines.emplace_back(s(1), s(0), neg(c));
  std::set<ProjectivePoint> pts;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto pt = lines[i].meet(lines[j]);
      const auto on = std::count_if(lines.begin(), lines.end(), [&](const Line& l) { return l.contains(pt); });
      if (on >= 3) pts.insert(pt);
    }
  }
  return {std::vector<ProjectivePoint>(pts.begin(), pts.end()), lines, {}, 1};
}

/// Triangle A, B, C on x = 0, y = 0, x + y = z plus one extra point on
/// each side. Seed 0 gives D = (0:2:1), E = (2:0:1), F = (3:-2:1).
inline Configuration type9(std::uint64_t seed = 0) {
  const Field q = Field::rational();
  auto pt = [&](long long x, long long y, long long z) { return ProjectivePoint::from_ints(q, x, y, z); };
  const Line lx(Scalar::one(q), Scalar::zero(q), Scalar::zero(q));
  const Line ly(Scalar::zero(q), Scalar::one(q), Scalar::zero(q));
  const Line lxy(Scalar::one(q), Scalar::one(q), Scalar::from_int(q, -1));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    long long dv = 2, ev = 2, fv = 3;
    if (seed != 0) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
      auto draw = [&] {
        for (;;) {
          const long long v = rng.uniform(-20, 20);
          if (v != 0 && v != 1) return v;
        }
      };
      dv = draw();
      ev = draw();
      fv = draw();
    }
    std::vector<ProjectivePoint> pts = {pt(0, 0, 1), pt(1, 0, 1), pt(0, 1, 1),
                                        pt(0, dv, 1), pt(ev, 0, 1), pt(fv, 1 - fv, 1)};
    if (is_type9(pts)) return {pts, {lx, ly, lxy}, {}, attempt + 1};
  }
  throw std::runtime_error("type9: no admissible configuration within the attempt budget");
}

inline constexpr std::uint64_t kNagataSeed = 7;

/// Sixteen general points.
inline Configuration nagata16(std::uint64_t seed = kNagataSeed) { return general_config(16, seed); }

namespace detail {

/// A binary form of degree d over F_p, coefficients low to high in s/t.
struct BinaryForm {
  std::vector<std::uint64_t> c;

  std::uint64_t at(std::uint64_t u, std::uint64_t p) const {  // value at (u : 1)
    std::uint64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = (v * u + c[i]) % p;
    return v;
  }
  std::uint64_t at_infinity() const { return c.back(); }  // value at (1 : 0)
};

struct Parameterization {
  std::array<BinaryForm, 3> forms;
  std::uint64_t p;

  /// Image of every F_p-rational parameter; absent where all three vanish.
  std::vector<std::optional<ProjectivePoint>> image() const {
    std::vector<std::optional<ProjectivePoint>> out;
    auto add = [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
      if (x == 0 && y == 0 && z == 0) {
        out.emplace_back();
      } else {
        out.emplace_back(ProjectivePoint(Scalar::residue(x, p), Scalar::residue(y, p), Scalar::residue(z, p)));
      }
    };
    for (std::uint64_t u = 0; u < p; ++u) add(forms[0].at(u, p), forms[1].at(u, p), forms[2].at(u, p));
    add(forms[0].at_infinity(), forms[1].at_infinity(), forms[2].at_infinity());
    return out;
  }
};

inline Parameterization random_parameterization(int d, std::uint64_t p, Rng& rng) {
  Parameterization par{{}, p};
  for (auto& f : par.forms) {
    f.c.resize(static_cast<std::size_t>(d) + 1);
    for (auto& x : f.c) x = static_cast<std::uint64_t>(rng.uniform(0, static_cast<long long>(p) - 1));
  }
  return par;
}

/// Degree-d equation of the image curve, when the image spans a unique one.
inline std::optional<HomoPoly> implicitize(const Parameterization& par, int d) {
  std::set<ProjectivePoint> pts;
  for (auto& q : par.image()) {
    if (!q) return std::nullopt;  // base point: the map drops degree
    pts.insert(*q);
  }
  // More than d^2 points of an irreducible degree-d curve pin it down.
  if (static_cast<long long>(pts.size()) <= static_cast<long long>(d) * d) return std::nullopt;
  const FatPointScheme scheme = FatPointScheme::uniform(std::vector<ProjectivePoint>(pts.begin(), pts.end()), 1);
  auto basis = kernel_basis(scheme, d);
  if (basis.size() != 1) return std::nullopt;
  return basis.front();
}

inline std::optional<std::vector<ProjectivePoint>> maximal_nodes(const HomoPoly& f) {
  const int d = f.degree();
  const auto sing = singular_points_over_Fp(f);
  if (static_cast<long long>(sing.size()) != binomial(d - 1, 2)) return std::nullopt;
  for (const auto& q : sing) {
    if (order_of_vanishing(f, q) != 2) return std::nullopt;
  }
  return sing;
}

inline void check_nodal_params(int d, std::uint64_t p) {
  if (d < 2) throw std::invalid_argument("nodal curve: degree must be >= 2");
  if (!is_prime(p)) throw std::invalid_argument("nodal curve: modulus must be prime");
  if (p <= static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d)) {
    throw std::invalid_argument("nodal curve: need p > d^2");
  }
}

}  // namespace detail

inline constexpr std::uint64_t kDefaultNodalPrime = 101;

/// A rational curve of degree d over F_p with the maximal number C(d-1,2) of
/// singular points, all F_p-rational and of multiplicity 2. Curves are the
/// images of random degree-d parameterizations; absent when no attempt
/// within max_retries qualifies. d = 2 yields a smooth conic and no points.
inline std::optional<Configuration> rational_nodal_nodes(int d, std::uint64_t p = kDefaultNodalPrime,
                                                         std::uint64_t seed = 0, int max_retries = 5000) {
  detail::check_nodal_params(d, p);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    const auto par = detail::random_parameterization(d, p, rng);
    const auto f = detail::implicitize(par, d);
    if (!f) continue;
    auto nodes = detail::maximal_nodes(*f);
    if (!nodes) continue;
    return Configuration{std::move(*nodes), {}, {*f}, attempt + 1};
  }
  return std::nullopt;
}

/// Nodes of two rational nodal curves of degrees d1, d2 together with their
/// d1*d2 intersection points, all F_p-rational and transversal: the product
/// curve must have exactly the expected singular set, all of multiplicity 2.
inline std::optional<Configuration> two_nodal_union(int d1, int d2, std::uint64_t p = kDefaultNodalPrime,
                                                    std::uint64_t seed = 0, int max_retries = 20000) {
  if (d1 < 2 || d2 < 2) throw std::invalid_argument("two_nodal_union: degrees must be >= 2");
  detail::check_nodal_params(std::max(d1, d2), p);
  if (p <= static_cast<std::uint64_t>(d1 + d2)) throw std::invalid_argument("two_nodal_union: need p > d1 + d2");
  const auto first = rational_nodal_nodes(d1, p, seed, max_retries);
  if (!first) return std::nullopt;
  const HomoPoly& f1 = first->curves.front();
  const detail::FpForm form1(f1);
  const long long want = binomial(d1 - 1, 2) + binomial(d2 - 1, 2) + static_cast<long long>(d1) * d2;
  std::array<std::vector<std::uint64_t>, 3> powers;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Rng rng(derive_seed(derive_seed(seed, 0x5eed), static_cast<std::uint64_t>(attempt)));
    const auto par = detail::random_parameterization(d2, p, rng);
    // Cheap filter: f1 pulled back along the second curve must have d1*d2
    // distinct F_p-rational parameter roots.
    const auto image = par.image();
    long long roots = 0;
    for (const auto& q : image) {
      if (!q) break;
      const auto& c = q->coords();
      detail::fill_powers(powers, c[0].as_residue(), c[1].as_residue(), c[2].as_residue(), d1, p);
      if (form1(powers) == 0) ++roots;
    }
    if (roots != static_cast<long long>(d1) * d2) continue;
    const auto f2 = detail::implicitize(par, d2);
    if (!f2) continue;
    const HomoPoly product = f1 * *f2;
    const auto sing = singular_points_over_Fp(product);
    if (static_cast<long long>(sing.size()) != want) continue;
    if (!std::all_of(sing.begin(), sing.end(), [&](const ProjectivePoint& q) {
          return order_of_vanishing(product, q) == 2;
        })) {
      continue;
    }
    return Configuration{sing, {}, {f1, *f2}, first->attempts + attempt + 1};
  }
  return std::nullopt;
}

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"collinear", "on_conic",  "general",          "star",
                                                 "star_minus_one", "dual_hesse", "type9", "nagata16",
                                                 "nodal_curve_nodes", "two_nodal_union"};
  return names;
}

/// Runs the generator named by spec.family.
inline Configuration generate(const ConfigSpec& spec) {
  const std::string& f = spec.family;
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(f + ": " + what);
  };
  if (f == "collinear") return {collinear(spec.r), {}, {}, 1};
  if (f == "on_conic") return {on_conic(spec.r), {}, {}, 1};
  if (f == "general") return general_config(spec.r, spec.seed, spec.height);
  if (f == "star") return star(spec.p, spec.seed);
  if (f == "star_minus_one") return star_minus_one(spec.d, spec.seed);
  if (f == "dual_hesse") return dual_hesse(spec.p > 0 ? static_cast<std::uint64_t>(spec.p) : 31);
  if (f == "type9") return type9(spec.seed);
  if (f == "nagata16") return nagata16(spec.seed == 0 ? kNagataSeed : spec.seed);
  const std::uint64_t prime = spec.prime ? spec.prime : kDefaultNodalPrime;
  if (f == "nodal_curve_nodes") {
    need(spec.d >= 2, "d must be >= 2");
    auto c = rational_nodal_nodes(spec.d, prime, spec.seed);
    if (!c) throw std::runtime_error("nodal_curve_nodes: no admissible curve within the retry budget");
    return *c;
  }
  if (f == "two_nodal_union") {
    auto c = two_nodal_union(spec.d, spec.d2, prime, spec.seed);
    if (!c) throw std::runtime_error("two_nodal_union: no admissible pair within the retry budget");
    return *c;
  }
  throw std::invalid_argument("unknown family '" + f + "'");
}

}  // namespace fatpoints
