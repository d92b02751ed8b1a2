#pragma once

/**
 * @file analysis.hpp
 * @brief Theorem checkers, the conjecture search harness and the example
 * reproduction registry.
 *
 * Checkers never assume genericity. Hypotheses are evaluated on computed
 * alpha values and every verdict records how those values were certified.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatpoints/configs.hpp"
#include "fatpoints/geometry.hpp"
#include "fatpoints/linsys.hpp"
#include "fatpoints/serialize.hpp"

namespace fatpoints {

enum class VerdictStatus { Consistent, ConsistentVacuous, ConsistentException, Inconsistent, Undecided };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Consistent: return "CONSISTENT";
    case VerdictStatus::ConsistentVacuous: return "CONSISTENT_VACUOUS";
    case VerdictStatus::ConsistentException: return "CONSISTENT_EXCEPTION";
    case VerdictStatus::Inconsistent: return "INCONSISTENT";
    case VerdictStatus::Undecided: return "UNDECIDED";
  }
  return "?";
}

struct TheoremVerdict {
  std::string theorem;
  int k = 0;
  bool hypothesis_holds = false;
  std::optional<bool> conclusion_holds;
  VerdictStatus status = VerdictStatus::Undecided;
  /// EXACT_RATIONAL when every alpha bound used is proven over Q;
  /// MULTI_PRIME(k) or SINGLE_PRIME when some existence side rests on
  /// modular rank agreement, and SINGLE_PRIME for data over F_p itself.
  std::string certification;
  std::vector<int> alphas;  ///< alpha(mZ), m = 1, 2, ...
  std::string field;
  std::vector<ProjectivePoint> points;
  std::uint64_t strategy_seed = 0;
  std::vector<std::uint64_t> primes;
  bool escalated = false;
  std::optional<Line> line;
  std::optional<HomoPoly> conic;
  std::optional<ArrangementWitness> arrangement;
  int p = 0;
  std::string note;
};

/// Alpha values of one configuration and how they were certified.
struct AlphaData {
  std::vector<int> alphas;
  std::string certification;
  std::vector<std::uint64_t> primes;
  bool proven = true;
};

struct CheckOptions {
  AlphaOptions alpha;
  /// Recompute with exact certification before reporting INCONSISTENT.
  bool escalate = true;
  /// Alphas already computed for these points with `alpha`; used when long
  /// enough, so several checks can share one sequence.
  const AlphaData* precomputed = nullptr;
};

namespace detail {

inline AlphaData compute_alphas(const std::vector<ProjectivePoint>& points, int k_max, const AlphaOptions& opts) {
  const AlphaReport rep = alpha_sequence(points, k_max, opts);
  AlphaData out;
  out.alphas = rep.alphas;
  std::set<std::uint64_t> primes;
  for (const auto& d : rep.details) {
    if (d.upper == BoundCertificate::Heuristic) out.proven = false;
    for (const auto* r : {&d.below, &d.at}) {
      if (*r) primes.insert((*r)->primes.begin(), (*r)->primes.end());
    }
  }
  out.primes.assign(primes.begin(), primes.end());
  const bool over_fp = !points.empty() && points.front().field().is_prime_field();
  if (over_fp) {
    out.certification = "SINGLE_PRIME";
  } else if (out.proven) {
    out.certification = "EXACT_RATIONAL";
  } else {
    out.certification = opts.search.kind == RankStrategy::Kind::SinglePrime
                            ? "SINGLE_PRIME"
                            : "MULTI_PRIME(" + std::to_string(opts.search.primes) + ")";
  }
  return out;
}

/// Fills in the verdict from alphas computed up to k_max. `decide` sets
/// hypothesis, conclusion and status from the alpha data.
template <typename Decide>
TheoremVerdict run_check(const std::string& theorem, int k, const std::vector<ProjectivePoint>& points, int k_max,
                         const CheckOptions& options, Decide&& decide) {
  if (points.empty()) throw std::invalid_argument(theorem + ": no points");
  auto evaluate = [&](const AlphaOptions& opts, const AlphaData* pre) {
    TheoremVerdict v;
    v.theorem = theorem;
    v.k = k;
    v.points = points;
    v.field = points.front().field().to_string();
    v.strategy_seed = opts.search.seed;
    AlphaData data = pre && static_cast<int>(pre->alphas.size()) >= k_max ? *pre : compute_alphas(points, k_max, opts);
    data.alphas.resize(static_cast<std::size_t>(k_max));
    v.alphas = data.alphas;
    v.certification = data.certification;
    v.primes = data.primes;
    decide(v);
    return v;
  };
  TheoremVerdict v = evaluate(options.alpha, options.precomputed);
  if (v.status == VerdictStatus::Inconsistent && options.escalate && v.certification != "EXACT_RATIONAL" &&
      points.front().field().is_rational()) {
    AlphaOptions exact = options.alpha;
    exact.certify = RankStrategy::exact();
    v = evaluate(exact, nullptr);
    v.escalated = true;
  }
  return v;
}

inline int alpha_at(const std::vector<int>& alphas, int m) {
  return m == 0 ? 0 : alphas.at(static_cast<std::size_t>(m - 1));
}

}  // namespace detail

/// alpha(kZ) - alpha(Z) = k - 1 implies the points are collinear.
inline TheoremVerdict check_thm_first(const std::vector<ProjectivePoint>& points, int k,
                                      const CheckOptions& options = {}) {
  if (k < 3) throw std::invalid_argument("check_thm_first: k must be >= 3");
  return detail::run_check("first_thm", k, points, k, options, [&](TheoremVerdict& v) {
    v.hypothesis_holds = detail::alpha_at(v.alphas, k) - detail::alpha_at(v.alphas, 1) == k - 1;
    if (!v.hypothesis_holds) {
      v.status = VerdictStatus::ConsistentVacuous;
      return;
    }
    v.line = are_collinear(points);
    v.conclusion_holds = v.line.has_value();
    v.status = *v.conclusion_holds ? VerdictStatus::Consistent : VerdictStatus::Inconsistent;
  });
}

/// alpha(kZ) - alpha((k-1)Z) = 1 implies the points are collinear or are
/// all intersection points of a line arrangement.
inline TheoremVerdict check_thm_only_lines(const std::vector<ProjectivePoint>& points, int k,
                                           const CheckOptions& options = {}) {
  if (k < 2) throw std::invalid_argument("check_thm_only_lines: k must be >= 2");
  return detail::run_check("only_lines", k, points, k, options, [&](TheoremVerdict& v) {
    v.hypothesis_holds = detail::alpha_at(v.alphas, k) - detail::alpha_at(v.alphas, k - 1) == 1;
    if (!v.hypothesis_holds) {
      v.status = VerdictStatus::ConsistentVacuous;
      return;
    }
    v.line = are_collinear(points);
    if (v.line) {
      v.conclusion_holds = true;
      v.status = VerdictStatus::Consistent;
      return;
    }
    const auto search = search_line_arrangement(points);
    v.arrangement = search.witness;
    v.conclusion_holds = search.witness.has_value();
    if (search.witness) {
      v.status = VerdictStatus::Consistent;
    } else if (!search.exhaustive) {
      v.status = VerdictStatus::Undecided;
      v.note = "arrangement search budget exhausted";
    } else {
      v.status = VerdictStatus::Inconsistent;
    }
  });
}

/// Two consecutive unit differences ending at k imply collinearity.
inline TheoremVerdict check_cor_collinear(const std::vector<ProjectivePoint>& points, int k,
                                          const CheckOptions& options = {}) {
  if (k < 3) throw std::invalid_argument("check_cor_collinear: k must be >= 3");
  return detail::run_check("cor_collinear", k, points, k, options, [&](TheoremVerdict& v) {
    const auto& a = v.alphas;
    v.hypothesis_holds = detail::alpha_at(a, k) - detail::alpha_at(a, k - 1) == 1 &&
                         detail::alpha_at(a, k - 1) - detail::alpha_at(a, k - 2) == 1;
    if (!v.hypothesis_holds) {
      v.status = VerdictStatus::ConsistentVacuous;
      return;
    }
    v.line = are_collinear(points);
    v.conclusion_holds = v.line.has_value();
    v.status = *v.conclusion_holds ? VerdictStatus::Consistent : VerdictStatus::Inconsistent;
  });
}

/// alpha(mZ) = p + 2(m-1) for m = 1..k_max implies p = 2 and a common conic.
/// For k_max = 4 six points may instead form the type-9 configuration; for
/// k_max = 4 and more than six points no claim is made.
inline TheoremVerdict check_thm_last(const std::vector<ProjectivePoint>& points, int k_max,
                                     const CheckOptions& options = {}) {
  if (k_max < 4) throw std::invalid_argument("check_thm_last: k_max must be >= 4");
  return detail::run_check("last_thm", k_max, points, k_max, options, [&](TheoremVerdict& v) {
    const int p = v.alphas.front();
    v.p = p;
    v.hypothesis_holds = true;
    for (int m = 2; m <= k_max; ++m) {
      if (detail::alpha_at(v.alphas, m) != p + 2 * (m - 1)) v.hypothesis_holds = false;
    }
    if (!v.hypothesis_holds) {
      v.status = VerdictStatus::ConsistentVacuous;
      return;
    }
    v.conic = common_conic(points);
    v.conclusion_holds = v.conic.has_value() && p == 2;
    if (*v.conclusion_holds) {
      v.status = VerdictStatus::Consistent;
    } else if (k_max >= 5) {
      v.status = VerdictStatus::Inconsistent;
    } else if (points.size() == 6) {
      v.status = is_type9(points) ? VerdictStatus::ConsistentException : VerdictStatus::Inconsistent;
      if (v.status == VerdictStatus::ConsistentException) v.note = "type-9 configuration";
    } else {
      v.status = VerdictStatus::Undecided;
      v.note = "k_max = 4 is below the range of the statement";
    }
  });
}

/// alpha(mZ) for m = 1..k_max with the certification label used in verdicts.
inline AlphaData alpha_data(const std::vector<ProjectivePoint>& points, int k_max, const AlphaOptions& opts = {}) {
  return detail::compute_alphas(points, k_max, opts);
}

/// Every theorem check that k_max allows, sharing one alpha sequence.
inline std::vector<TheoremVerdict> check_all(const std::vector<ProjectivePoint>& points, int k_max,
                                             const CheckOptions& options = {}) {
  if (k_max < 2) throw std::invalid_argument("check_all: k_max must be >= 2");
  const AlphaData data = alpha_data(points, k_max, options.alpha);
  CheckOptions shared = options;
  shared.precomputed = &data;
  std::vector<TheoremVerdict> out;
  for (int k = 3; k <= k_max; ++k) out.push_back(check_thm_first(points, k, shared));
  for (int k = 2; k <= k_max; ++k) out.push_back(check_thm_only_lines(points, k, shared));
  for (int k = 3; k <= k_max; ++k) out.push_back(check_cor_collinear(points, k, shared));
  for (int k = 4; k <= k_max; ++k) out.push_back(check_thm_last(points, k, shared));
  return out;
}

/// Mode 2: four consecutive differences of 2 ending at k, conclusion a
/// common conic. Mode 3 (exploratory): alpha(mZ) - alpha((m-1)Z) = 3 for
/// m = 2..k, conclusion alpha(Z) = 3.
inline TheoremVerdict check_conjecture(const std::vector<ProjectivePoint>& points, int k, int mode = 2,
                                       const CheckOptions& options = {}) {
  if (k < 5) throw std::invalid_argument("check_conjecture: k must be >= 5");
  if (mode != 2 && mode != 3) throw std::invalid_argument("check_conjecture: mode must be 2 or 3");
  const std::string name = mode == 2 ? "conjecture_conic" : "conjecture_cubic";
  return detail::run_check(name, k, points, k, options, [&](TheoremVerdict& v) {
    const auto& a = v.alphas;
    v.p = a.front();
    v.hypothesis_holds = true;
    const int first = mode == 2 ? k - 3 : 2;
    for (int m = first; m <= k; ++m) {
      if (detail::alpha_at(a, m) - detail::alpha_at(a, m - 1) != mode) v.hypothesis_holds = false;
    }
    if (!v.hypothesis_holds) {
      v.status = VerdictStatus::ConsistentVacuous;
      return;
    }
    if (mode == 2) {
      v.conic = common_conic(points);
      v.conclusion_holds = v.conic.has_value();
    } else {
      v.conclusion_holds = a.front() == 3;
      v.note = "exploratory";
    }
    v.status = *v.conclusion_holds ? VerdictStatus::Consistent : VerdictStatus::Inconsistent;
  });
}

/// (d-1)(d-2) >= sum m_i(m_i - 1), multiplicities read off the curve.
inline bool check_genus_bound(const HomoPoly& curve, const std::vector<ProjectivePoint>& points) {
  if (curve.is_zero()) throw std::invalid_argument("check_genus_bound: zero curve");
  const long long d = curve.degree();
  long long sum = 0;
  for (const auto& p : points) {
    const long long m = order_of_vanishing(curve, p);
    sum += m * (m - 1);
  }
  return (d - 1) * (d - 2) >= sum;
}

/// As above, after checking that `mults` are the actual multiplicities.
inline bool check_genus_bound(const HomoPoly& curve, const std::vector<ProjectivePoint>& points,
                              const std::vector<int>& mults) {
  if (mults.size() != points.size()) throw std::invalid_argument("check_genus_bound: size mismatch");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!curve.is_zero() && order_of_vanishing(curve, points[i]) != mults[i]) {
      throw std::invalid_argument("check_genus_bound: multiplicity " + std::to_string(mults[i]) +
                                  " does not match the curve at point " + std::to_string(i));
    }
  }
  return check_genus_bound(curve, points);
}

/// (d-1)(d-2) = r k (k-1) and 2(d-1) < r k.
inline bool check_high_sing_conditions(long long d, long long k, long long r) {
  if (d < 2 || k < 2 || r < 1) throw std::invalid_argument("check_high_sing_conditions: need d, k >= 2, r >= 1");
  return (d - 1) * (d - 2) == r * k * (k - 1) && 2 * (d - 1) < r * k;
}

// Conjecture search.

struct SearchOptions {
  int trials = 200;
  int r_min = 4;
  int r_max = 9;
  int k = 5;
  int mode = 2;
  std::uint64_t seed = 1;
  Field field = Field::rational();
  /// Coordinates are drawn from [-height, height]; small heights make
  /// special position (collinear triples, points on conics) common.
  long long height = 3;
  CheckOptions check;
};

struct SearchResult {
  SearchOptions options;
  int trials_run = 0;
  int hypothesis_true = 0;
  /// Every hypothesis-true instance, in trial order.
  std::vector<std::pair<int, TheoremVerdict>> logged;
  /// Instances whose verdict stayed INCONSISTENT after escalation.
  std::vector<std::pair<int, TheoremVerdict>> inconsistent;
  int unescalated_inconsistent = 0;
};

inline std::vector<ProjectivePoint> random_small_points(int r, const Field& field, long long height, Rng& rng) {
  std::set<ProjectivePoint> seen;
  std::vector<ProjectivePoint> pts;
  const long long hi = field.is_prime_field() ? static_cast<long long>(field.characteristic()) - 1 : height;
  const long long lo = field.is_prime_field() ? 0 : -height;
  int guard = 0;
  while (static_cast<int>(pts.size()) < r) {
    if (++guard > 100000) throw std::runtime_error("random_small_points: height too small for r points");
    const long long x = rng.uniform(lo, hi), y = rng.uniform(lo, hi), z = rng.uniform(lo, hi);
    if (x == 0 && y == 0 && z == 0) continue;
    auto p = ProjectivePoint::from_ints(field, x, y, z);
    if (seen.insert(p).second) pts.push_back(std::move(p));
  }
  return pts;
}

/// Trial t uses Rng(derive_seed(seed, t)) for both r and the points.
inline std::vector<ProjectivePoint> search_trial_points(const SearchOptions& o, int t) {
  Rng rng(derive_seed(o.seed, static_cast<std::uint64_t>(t)));
  const int r = static_cast<int>(rng.uniform(o.r_min, o.r_max));
  return random_small_points(r, o.field, o.height, rng);
}

inline SearchResult conjecture_search(const SearchOptions& o) {
  if (o.trials < 1) throw std::invalid_argument("conjecture_search: trials must be >= 1");
  if (o.r_min < 1 || o.r_max < o.r_min) throw std::invalid_argument("conjecture_search: bad r range");
  if (o.k < 5) throw std::invalid_argument("conjecture_search: k must be >= 5");
  SearchResult res;
  res.options = o;
  for (int t = 0; t < o.trials; ++t) {
    const auto pts = search_trial_points(o, t);
    TheoremVerdict v = check_conjecture(pts, o.k, o.mode, o.check);
    ++res.trials_run;
    if (!v.hypothesis_holds) continue;
    ++res.hypothesis_true;
    if (v.status == VerdictStatus::Inconsistent) {
      if (!v.escalated && v.certification != "EXACT_RATIONAL" && o.field.is_rational()) ++res.unescalated_inconsistent;
      res.inconsistent.emplace_back(t, v);
    }
    res.logged.emplace_back(t, std::move(v));
  }
  return res;
}

inline json to_json(const TheoremVerdict& v) {
  json j = {{"theorem", v.theorem},
            {"k", v.k},
            {"hypothesis_holds", v.hypothesis_holds},
            {"conclusion_holds", v.conclusion_holds ? json(*v.conclusion_holds) : json(nullptr)},
            {"status", to_string(v.status)},
            {"certification", v.certification},
            {"alphas", v.alphas},
            {"field", v.field},
            {"strategy_seed", v.strategy_seed},
            {"primes", v.primes},
            {"escalated", v.escalated},
            {"points", to_json(v.points)}};
  if (v.line) j["line"] = to_json(*v.line);
  if (v.conic) j["conic"] = to_json(*v.conic);
  if (v.arrangement) j["arrangement"] = to_json(*v.arrangement);
  if (v.theorem == "last_thm" || v.theorem.rfind("conjecture", 0) == 0) j["p"] = v.p;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline json to_json(const SearchResult& r) {
  auto entries = [](const std::vector<std::pair<int, TheoremVerdict>>& xs) {
    json a = json::array();
    for (const auto& [t, v] : xs) {
      json e = to_json(v);
      e["trial"] = t;
      a.push_back(std::move(e));
    }
    return a;
  };
  const auto& o = r.options;
  return {{"schema", kSchema},
          {"command", "search"},
          {"mode", o.mode},
          {"trials", o.trials},
          {"seed", o.seed},
          {"k", o.k},
          {"r_range", {o.r_min, o.r_max}},
          {"height", o.height},
          {"field", o.field.to_string()},
          {"strategy", o.check.alpha.search.to_string()},
          {"trials_run", r.trials_run},
          {"hypothesis_true", r.hypothesis_true},
          {"inconsistent_count", r.inconsistent.size()},
          {"unescalated_inconsistent", r.unescalated_inconsistent},
          {"logged", entries(r.logged)},
          {"inconsistent", entries(r.inconsistent)}};
}

// Example registry.

struct ReproCell {
  std::string label;
  std::string expected;
  std::string actual;
  bool pass = false;
  std::string source;  ///< "published" or "computed"
  std::string certification;
};

struct ReproReport {
  std::string id;
  std::string title;
  std::vector<ReproCell> cells;
  bool pass = true;
};

inline ConfigSpec config_spec_from_json(const json& j) {
  ConfigSpec s;
  s.family = j.at("family").get<std::string>();
  s.r = j.value("r", 0);
  s.p = j.value("p", 0);
  s.d = j.value("d", 0);
  s.d2 = j.value("d2", 0);
  s.prime = j.value("prime", std::uint64_t{0});
  s.seed = j.value("seed", std::uint64_t{0});
  s.height = j.value("height", kDefaultHeight);
  return s;
}

namespace detail {

inline bool dual_hesse_incidence(const Configuration& c) {
  if (c.points.size() != 12 || c.lines.size() != 9) return false;
  for (const auto& l : c.lines) {
    if (std::count_if(c.points.begin(), c.points.end(), [&](const ProjectivePoint& p) { return l.contains(p); }) != 4)
      return false;
  }
  for (const auto& p : c.points) {
    if (std::count_if(c.lines.begin(), c.lines.end(), [&](const Line& l) { return l.contains(p); }) != 3)
      return false;
  }
  return true;
}

inline std::string predicate_value(const std::string& name, const Configuration& c) {
  const auto& pts = c.points;
  if (name == "point_count") return std::to_string(pts.size());
  if (name == "collinear") return are_collinear(pts) ? "true" : "false";
  if (name == "conic") return common_conic(pts) ? "true" : "false";
  if (name == "type9") return is_type9(pts) ? "true" : "false";
  if (name == "star") return is_star_configuration(pts) ? "true" : "false";
  if (name == "arrangement") return detect_line_arrangement(pts) ? "true" : "false";
  if (name == "dual_hesse_incidence") return dual_hesse_incidence(c) ? "true" : "false";
  if (name == "genus_bound_equality") {
    if (c.curves.size() != 1) throw std::invalid_argument("genus_bound_equality needs a single curve");
    const auto& f = c.curves.front();
    long long sum = 0;
    for (const auto& p : pts) {
      const long long m = order_of_vanishing(f, p);
      sum += m * (m - 1);
    }
    const long long d = f.degree();
    return (d - 1) * (d - 2) == sum ? "true" : "false";
  }
  throw std::invalid_argument("unknown predicate '" + name + "'");
}

inline std::string json_scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  return j.dump();
}

}  // namespace detail

/// Regenerates the configuration of one registry entry and compares every
/// expected cell with a fresh computation.
inline ReproReport repro(const json& entry) {
  ReproReport rep;
  rep.id = entry.at("id").get<std::string>();
  rep.title = entry.value("title", "");
  const Configuration config = generate(config_spec_from_json(entry.at("config")));
  const RankStrategy search = RankStrategy::parse(entry.value("strategy", "multiprime:2"));
  std::map<int, std::string> certify_by_k;
  std::string certify_default = "exact";
  if (entry.contains("certify")) {
    const auto& c = entry.at("certify");
    if (c.is_string()) {
      certify_default = c.get<std::string>();
    } else {
      for (const auto& [key, val] : c.items()) {
        if (key == "default") {
          certify_default = val.get<std::string>();
        } else {
          certify_by_k[std::stoi(key)] = val.get<std::string>();
        }
      }
    }
  }
  const int k_max = entry.value("kmax", 0);
  std::vector<AlphaResult> alphas;
  int previous = 0;
  for (int m = 1; m <= k_max; ++m) {
    AlphaOptions opts;
    opts.search = search;
    const std::string cert = certify_by_k.count(m) ? certify_by_k[m] : certify_default;
    if (cert != "none") opts.certify = RankStrategy::parse(cert);
    opts.lower_bound = previous + 1;
    alphas.push_back(alpha(FatPointScheme::uniform(config.points, m), opts));
    previous = alphas.back().alpha;
  }
  auto cert_text = [](const AlphaResult& a) {
    std::string s = "lower=" + to_string(a.lower) + " upper=" + to_string(a.upper);
    const auto* r = a.below ? &*a.below : a.at ? &*a.at : nullptr;
    if (r) s += " (" + to_string(r->certification) + ")";
    return s;
  };
  for (const auto& cell : entry.value("cells", json::array())) {
    ReproCell out;
    out.source = cell.value("source", "computed");
    const std::string quantity = cell.at("quantity").get<std::string>();
    out.expected = detail::json_scalar_text(cell.at("expected"));
    if (quantity == "alpha") {
      const int k = cell.at("k").get<int>();
      if (k < 1 || k > k_max) throw std::invalid_argument(rep.id + ": alpha cell outside 1..kmax");
      const auto& a = alphas[static_cast<std::size_t>(k - 1)];
      out.label = "alpha(" + std::to_string(k) + "Z)";
      out.actual = std::to_string(a.alpha);
      out.certification = cert_text(a);
    } else if (quantity == "diff") {
      const int m = cell.at("m").get<int>(), n = cell.at("n").get<int>();
      if (m <= n || n < 0 || m > k_max) throw std::invalid_argument(rep.id + ": bad diff cell");
      const int lo = n == 0 ? 0 : alphas[static_cast<std::size_t>(n - 1)].alpha;
      out.label = "alpha_{" + std::to_string(m) + "," + std::to_string(n) + "}";
      out.actual = std::to_string(alphas[static_cast<std::size_t>(m - 1)].alpha - lo);
      out.certification = cert_text(alphas[static_cast<std::size_t>(m - 1)]);
    } else {
      out.label = quantity;
      out.actual = detail::predicate_value(quantity, config);
      out.certification = "exact";
    }
    out.pass = out.actual == out.expected;
    rep.pass = rep.pass && out.pass;
    rep.cells.push_back(std::move(out));
  }
  return rep;
}

inline const json& registry_entry(const json& registry, const std::string& id) {
  for (const auto& e : registry.at("examples")) {
    if (e.at("id") == id) return e;
  }
  throw std::out_of_range("unknown example id '" + id + "'");
}

inline ReproReport repro(const json& registry, const std::string& id) { return repro(registry_entry(registry, id)); }

inline json to_json(const ReproReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"label", c.label},
                     {"expected", c.expected},
                     {"actual", c.actual},
                     {"pass", c.pass},
                     {"source", c.source},
                     {"certification", c.certification}});
  }
  return {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"cells", cells}};
}

}  // namespace fatpoints
