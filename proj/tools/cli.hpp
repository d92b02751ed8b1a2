#pragma once

// Command-line front end. run_cli() is the whole program; main() only
// forwards to it so the tests can drive the CLI in-process.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fatpoints/fatpoints.hpp"

#ifndef FATPOINTS_REGISTRY
#define FATPOINTS_REGISTRY "data/registry.json"
#endif

namespace fatpoints::cli {

struct RunConfig {
  std::string field;
  std::string points_file;
  std::string family;
  int r = 0;
  int p = 0;
  int d = -1;
  int d2 = 0;
  std::uint64_t prime = 0;
  std::string mults;
  int kmax = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int trials = 200;
  std::string strategy;
  std::string cache_dir;
  bool verify_cache = false;
  std::string out;
  bool pretty = false;
  bool csv = false;
  std::string registry = FATPOINTS_REGISTRY;
  std::string theorem;
  int k = 0;
  int conjecture = 2;
  int r_min = 4;
  int r_max = 9;
  bool all = false;
  std::string example_id;
};

/// Exit codes: 0 success, 1 error, 2 result with a certification gap.
enum Exit { kOk = 0, kError = 1, kGap = 2 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct Input {
  Field field = Field::rational();
  std::vector<ProjectivePoint> points;
  std::vector<Line> lines;
  std::vector<HomoPoly> curves;
  std::vector<std::string> labels;
  json source;
};

inline ProjectivePoint reduce_point(const ProjectivePoint& p, const Field& target) {
  const auto rep = p.integer_representative();
  const std::uint64_t q = target.characteristic();
  auto red = [&](const mpz_class& v) { return Scalar::residue(mpz_fdiv_ui(v.get_mpz_t(), q), q); };
  return ProjectivePoint(red(rep[0]), red(rep[1]), red(rep[2]));
}

/// Rational points reduced modulo p; an error if two collide or one vanishes.
inline std::vector<ProjectivePoint> reduce_points(const std::vector<ProjectivePoint>& pts, const Field& target) {
  std::vector<ProjectivePoint> out;
  std::set<ProjectivePoint> seen;
  for (const auto& p : pts) {
    auto q = reduce_point(p, target);
    if (!seen.insert(q).second) throw std::invalid_argument("points collide after reduction to " + target.to_string());
    out.push_back(std::move(q));
  }
  return out;
}

inline Input load_input(const RunConfig& c, bool required = true) {
  Input in;
  const bool has_points = !c.points_file.empty(), has_family = !c.family.empty();
  if (has_points == has_family) {
    if (!required && !has_points) return in;
    throw UsageError("give exactly one of --points or --family");
  }
  if (has_points) {
    const PointSet ps = point_set_from_json(read_json_file(c.points_file));
    in.field = ps.field;
    in.points = ps.points;
    in.lines = ps.lines;
    in.source = {{"points", c.points_file}};
    if (!c.field.empty() && !(Field::parse(c.field) == in.field)) {
      throw FieldMismatch("--field " + c.field + " disagrees with the point file field " + in.field.to_string());
    }
    return in;
  }
  ConfigSpec spec;
  spec.family = c.family;
  spec.r = c.r;
  spec.p = c.p;
  spec.d = c.d < 0 ? 0 : c.d;
  spec.d2 = c.d2;
  spec.prime = c.prime;
  spec.seed = c.seed;
  if (c.family == "nagata16" && !c.seed_given) spec.seed = kNagataSeed;
  if (c.family == "general" && !c.seed_given) spec.seed = 1;
  if (c.family == "star" || c.family == "star_minus_one") {
    if (!c.seed_given) spec.seed = 1;
  }
  Configuration conf = generate(spec);
  in.points = conf.points;
  in.lines = conf.lines;
  in.curves = conf.curves;
  in.field = in.points.empty() ? Field::rational() : in.points.front().field();
  if (c.family == "type9") in.labels = {"A", "B", "C", "D", "E", "F"};
  in.source = {{"family", spec.family}, {"r", spec.r},   {"p", spec.p},         {"d", spec.d},
               {"d2", spec.d2},         {"prime", spec.prime}, {"seed", spec.seed}, {"attempts", conf.attempts}};
  if (!c.field.empty()) {
    const Field target = Field::parse(c.field);
    if (!(target == in.field)) {
      if (!in.field.is_rational() || !target.is_prime_field()) {
        throw FieldMismatch("cannot move a " + in.field.to_string() + " configuration to " + target.to_string());
      }
      in.points = reduce_points(in.points, target);
      in.lines.clear();
      in.curves.clear();
      in.field = target;
    }
  }
  return in;
}

inline std::vector<int> parse_mults(const std::string& text, std::size_t r) {
  if (text.empty()) return std::vector<int>(r, 1);
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("--mults expects non-negative integers separated by commas");
    }
    out.push_back(std::stoi(item));
  }
  if (out.size() == 1) return std::vector<int>(r, out.front());
  if (out.size() != r) {
    throw UsageError("--mults has " + std::to_string(out.size()) + " entries for " + std::to_string(r) + " points");
  }
  return out;
}

inline std::optional<ResultCache> open_cache(const RunConfig& c) {
  // FATPOINTS_CACHE, when set and nonempty, takes precedence over --cache.
  std::string dir = c.cache_dir;
  if (const char* env = std::getenv("FATPOINTS_CACHE"); env && *env) dir = env;
  if (dir.empty()) return std::nullopt;
  return ResultCache(dir);
}

inline json header(const std::string& command, const Input& in) {
  return {{"schema", kSchema}, {"command", command}, {"field", in.field.to_string()}, {"input", in.source},
          {"points", in.points.size()}};
}

inline void emit(const RunConfig& c, std::ostream& out, const json& doc, const std::string& pretty_text) {
  const std::string text = c.pretty ? pretty_text : doc.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
  } else {
    write_text_file(c.out, text);
  }
}

inline std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline bool has_gap(const AlphaResult& a) { return a.upper == BoundCertificate::Heuristic; }

struct AlphaRun {
  json result;
  int alpha = 0;
  bool gap = false;
};

inline AlphaRun run_alpha(const FatPointScheme& scheme, const RunConfig& c, int lower_bound, const ResultCache* cache) {
  AlphaOptions opts;
  opts.lower_bound = lower_bound;
  const std::string certify = c.strategy.empty() ? "exact" : c.strategy;
  if (scheme.field().is_rational()) opts.certify = RankStrategy::parse(certify);
  const std::string key =
      cache_key("alpha", scheme, "search=" + opts.search.to_string() + ";certify=" + certify +
                                     ";lb=" + std::to_string(lower_bound));
  json j = cached(cache, key, c.verify_cache, [&] { return to_json(alpha(scheme, opts)); });
  AlphaRun run;
  run.alpha = j.at("alpha").get<int>();
  run.gap = j.at("upper") == to_string(BoundCertificate::Heuristic);
  run.result = std::move(j);
  return run;
}

inline int cmd_alpha(const RunConfig& c, std::ostream& out) {
  const Input in = load_input(c);
  const FatPointScheme scheme(in.points, parse_mults(c.mults, in.points.size()));
  auto cache = open_cache(c);
  const AlphaRun run = run_alpha(scheme, c, 0, cache ? &*cache : nullptr);
  json doc = header("alpha", in);
  doc["mults"] = scheme.multiplicities();
  doc["alpha"] = run.alpha;
  doc["lower"] = run.result["lower"];
  doc["upper"] = run.result["upper"];
  doc["details"] = run.result;
  std::string text = "alpha = " + std::to_string(run.alpha) + "  (lower bound: " +
                     run.result["lower"].get<std::string>() + ", upper bound: " +
                     run.result["upper"].get<std::string>() + ")\n";
  emit(c, out, doc, text);
  return run.gap ? kGap : kOk;
}

inline int cmd_alphaseq(const RunConfig& c, std::ostream& out) {
  const Input in = load_input(c);
  const int kmax = c.kmax == 0 ? 5 : c.kmax;
  if (kmax < 1) throw UsageError("--kmax must be >= 1");
  auto cache = open_cache(c);
  std::vector<int> alphas, diffs;
  json details = json::array();
  bool gap = false;
  int previous = 0;
  for (int m = 1; m <= kmax; ++m) {
    const AlphaRun run =
        run_alpha(FatPointScheme::uniform(in.points, m), c, previous + 1, cache ? &*cache : nullptr);
    if (m > 1) diffs.push_back(run.alpha - previous);
    previous = run.alpha;
    alphas.push_back(run.alpha);
    gap = gap || run.gap;
    details.push_back(run.result);
  }
  json doc = header("alphaseq", in);
  doc["kmax"] = kmax;
  doc["alphas"] = alphas;
  doc["diffs"] = diffs;
  doc["details"] = details;
  if (c.csv) {
    std::string csv = "k,alpha,diff,lower,upper\n";
    for (int m = 1; m <= kmax; ++m) {
      const auto& d = details[static_cast<std::size_t>(m - 1)];
      csv += std::to_string(m) + "," + std::to_string(alphas[static_cast<std::size_t>(m - 1)]) + "," +
             (m > 1 ? std::to_string(diffs[static_cast<std::size_t>(m - 2)]) : "") + "," +
             d["lower"].get<std::string>() + "," + d["upper"].get<std::string>() + "\n";
    }
    if (c.out.empty()) {
      out << csv;
    } else {
      write_text_file(c.out, csv);
    }
    return gap ? kGap : kOk;
  }
  std::string text = "alpha sequence: " + join(alphas) + "\n";
  text += "differences:    " + join(diffs) + "\n";
  emit(c, out, doc, text);
  return gap ? kGap : kOk;
}

inline int cmd_dim(const RunConfig& c, std::ostream& out, bool kernel) {
  const Input in = load_input(c);
  if (c.d < 0) throw UsageError("--d is required");
  const FatPointScheme scheme(in.points, parse_mults(c.mults, in.points.size()));
  const RankStrategy strategy = kernel ? RankStrategy::exact() : RankStrategy::parse(c.strategy.empty() ? "exact" : c.strategy);
  auto cache = open_cache(c);
  const std::string key = cache_key(kernel ? "kernel" : "dim", scheme,
                                    "d=" + std::to_string(c.d) + ";strategy=" + strategy.to_string());
  const json rep = cached(cache ? &*cache : nullptr, key, c.verify_cache,
                          [&] { return to_json(system_dim(scheme, c.d, strategy, kernel)); });
  json doc = header(kernel ? "kernel" : "dim", in);
  doc["mults"] = scheme.multiplicities();
  doc["report"] = rep;
  std::string text = "degree " + std::to_string(c.d) + ": expected " + rep["expected_dim"].dump() + ", actual " +
                     rep["actual_dim"].dump() + ", superabundance " + rep["superabundance"].dump() + " [" +
                     rep["certification"].get<std::string>() + "]\n";
  if (kernel) {
    for (const auto& g : rep["kernel_basis"]) text += "  " + g["text"].get<std::string>() + "\n";
  }
  emit(c, out, doc, text);
  return rep["rank_proven"].get<bool>() ? kOk : kGap;
}

inline int cmd_check(const RunConfig& c, std::ostream& out) {
  const std::string& t = c.theorem;
  if (t.empty()) throw UsageError("--theorem is required");
  if (t == "high_sing") {
    if (c.d < 0 || c.k == 0 || c.r == 0) throw UsageError("high_sing needs --d, --k and --r");
    const bool ok = check_high_sing_conditions(c.d, c.k, c.r);
    json doc = {{"schema", kSchema}, {"command", "check"}, {"theorem", t}, {"d", c.d}, {"k", c.k}, {"r", c.r},
                {"holds", ok}};
    emit(c, out, doc, std::string("conditions ") + (ok ? "hold" : "fail") + "\n");
    return kOk;
  }
  const Input in = load_input(c);
  if (t == "genus") {
    if (in.curves.size() != 1) throw UsageError("genus check needs a family that produces one curve");
    const bool ok = check_genus_bound(in.curves.front(), in.points);
    json doc = header("check", in);
    doc["theorem"] = t;
    doc["curve"] = to_json(in.curves.front());
    doc["holds"] = ok;
    emit(c, out, doc, std::string("genus bound ") + (ok ? "holds" : "fails") + "\n");
    return kOk;
  }
  CheckOptions opts;
  if (!c.strategy.empty()) opts.alpha.search = RankStrategy::parse(c.strategy);
  TheoremVerdict v;
  if (t == "first") {
    v = check_thm_first(in.points, c.k ? c.k : 3, opts);
  } else if (t == "only_lines") {
    v = check_thm_only_lines(in.points, c.k ? c.k : 2, opts);
  } else if (t == "cor_collinear") {
    v = check_cor_collinear(in.points, c.k ? c.k : 3, opts);
  } else if (t == "last") {
    v = check_thm_last(in.points, c.k ? c.k : (c.kmax ? c.kmax : 5), opts);
  } else if (t == "conjecture") {
    v = check_conjecture(in.points, c.k ? c.k : 5, c.conjecture, opts);
  } else {
    throw UsageError("unknown theorem '" + t + "'");
  }
  json doc = header("check", in);
  doc["verdict"] = to_json(v);
  std::string text = v.theorem + " k=" + std::to_string(v.k) + ": " + to_string(v.status) + " (alphas " +
                     join(v.alphas) + ", " + v.certification + ")\n";
  emit(c, out, doc, text);
  return v.status == VerdictStatus::Inconsistent || v.status == VerdictStatus::Undecided ? kGap : kOk;
}

inline int cmd_repro(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const json registry = read_json_file(c.registry);
  std::vector<std::string> ids;
  if (c.all) {
    for (const auto& e : registry.at("examples")) ids.push_back(e.at("id").get<std::string>());
  } else if (!c.example_id.empty()) {
    ids.push_back(c.example_id);
  } else {
    throw UsageError("give an example id or --all");
  }
  json reports = json::array();
  bool pass = true;
  for (const auto& id : ids) {
    ReproReport r;
    try {
      r = repro(registry, id);
    } catch (const std::out_of_range& e) {
      err << "error: " << e.what() << "\n";
      return kError;
    }
    pass = pass && r.pass;
    out << (r.pass ? "PASS " : "FAIL ") << r.id << "  " << r.title << "\n";
    for (const auto& cell : r.cells) {
      out << "  " << (cell.pass ? "PASS" : "FAIL") << "  " << cell.label << "  expected " << cell.expected
          << "  actual " << cell.actual << "  [" << cell.source << "; " << cell.certification << "]\n";
    }
    reports.push_back(to_json(r));
  }
  const json artifact = {{"schema", kSchema}, {"command", "repro"}, {"pass", pass}, {"examples", reports}};
  write_text_file(c.out.empty() ? "fatpoints-repro.json" : c.out, artifact.dump(2) + "\n");
  return pass ? kOk : kError;
}

inline int cmd_search(const RunConfig& c, std::ostream& out) {
  if (c.trials < 1) throw UsageError("--trials must be >= 1");
  if (c.conjecture != 2 && c.conjecture != 3) throw UsageError("--conjecture must be 2 or 3");
  SearchOptions o;
  o.trials = c.trials;
  o.seed = c.seed_given ? c.seed : 1;
  o.mode = c.conjecture;
  o.k = c.kmax ? c.kmax : 5;
  o.r_min = c.r_min;
  o.r_max = c.r_max;
  if (!c.field.empty()) o.field = Field::parse(c.field);
  if (!c.strategy.empty()) o.check.alpha.search = RankStrategy::parse(c.strategy);
  const SearchResult res = conjecture_search(o);
  json doc = to_json(res);
  if (!c.family.empty() || !c.points_file.empty()) {
    RunConfig control = c;
    control.field.clear();
    const Input in = load_input(control);
    doc["control"] = to_json(check_conjecture(in.points, o.k, o.mode, o.check));
  }
  write_text_file(c.out.empty() ? "fatpoints-search.json" : c.out, doc.dump(2) + "\n");
  out << "trials " << res.trials_run << ", hypothesis true " << res.hypothesis_true << ", inconsistent "
      << res.inconsistent.size() << " (unescalated " << res.unescalated_inconsistent << ")\n";
  if (doc.contains("control")) {
    out << "control: " << doc["control"]["status"].get<std::string>() << "\n";
  }
  return kOk;
}

inline int cmd_plot(const RunConfig& c, std::ostream& out) {
  const Input in = load_input(c);
  PlotOptions opt;
  opt.labels = in.labels;
  const std::string svg = plot_svg(in.points, in.lines, opt);
  if (c.out.empty()) {
    out << svg;
  } else {
    write_text_file(c.out, svg);
  }
  return kOk;
}

inline int cmd_generate(const RunConfig& c, std::ostream& out) {
  if (c.family.empty()) throw UsageError("generate needs --family");
  const Input in = load_input(c);
  json doc = point_set_json(in.field, in.points, in.lines);
  doc["generator"] = in.source;
  if (!in.curves.empty()) {
    json curves = json::array();
    for (const auto& f : in.curves) curves.push_back(to_json(f));
    doc["curves"] = curves;
  }
  const std::string text = doc.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
  } else {
    write_text_file(c.out, text);
  }
  return kOk;
}

inline void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--field", c.field, "rational | prime:P");
  app->add_option("--points", c.points_file, "point set JSON file");
  app->add_option("--family", c.family, "configuration family");
  app->add_option("--r", c.r, "number of points");
  app->add_option("--p", c.p, "number of lines (star) or prime (dual_hesse)");
  app->add_option("--d", c.d, "degree");
  app->add_option("--d2", c.d2, "second degree (two_nodal_union)");
  app->add_option("--prime", c.prime, "prime for nodal families");
  app->add_option("--mults", c.mults, "multiplicities, comma separated or one value");
  app->add_option("--kmax", c.kmax, "largest k");
  app->add_option("--k", c.k, "k for theorem checks");
  app->add_option("--seed", c.seed, "random seed")->each([&c](const std::string&) { c.seed_given = true; });
  app->add_option("--strategy", c.strategy, "exact | prime | multiprime:K");
  app->add_option("--cache", c.cache_dir, "result cache directory");
  app->add_flag("--verify-cache", c.verify_cache, "recompute cache hits and compare");
  app->add_option("--out", c.out, "output file");
  app->add_flag("--pretty", c.pretty, "human readable output");
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Initial degrees of symbolic powers of planar point configurations"};
  app.require_subcommand(1);
  RunConfig c;
  auto* alpha_cmd = app.add_subcommand("alpha", "initial degree of I(mZ)");
  auto* seq_cmd = app.add_subcommand("alphaseq", "alpha(kZ) for k = 1..kmax");
  auto* dim_cmd = app.add_subcommand("dim", "dimension of a linear system");
  auto* kernel_cmd = app.add_subcommand("kernel", "basis of a linear system");
  auto* check_cmd = app.add_subcommand("check", "theorem checks on one configuration");
  auto* repro_cmd = app.add_subcommand("repro", "recompute registry examples");
  auto* search_cmd = app.add_subcommand("search", "randomized conjecture search");
  auto* plot_cmd = app.add_subcommand("plot", "SVG drawing of a configuration");
  auto* gen_cmd = app.add_subcommand("generate", "write a generated point set");
  for (auto* s : {alpha_cmd, seq_cmd, dim_cmd, kernel_cmd, check_cmd, repro_cmd, search_cmd, plot_cmd, gen_cmd}) {
    detail::add_common(s, c);
  }
  seq_cmd->add_flag("--csv", c.csv, "CSV table instead of JSON");
  check_cmd->add_option("--theorem", c.theorem, "first | only_lines | cor_collinear | last | conjecture | genus | high_sing");
  check_cmd->add_option("--conjecture", c.conjecture, "difference for the conjecture check (2 or 3)");
  repro_cmd->add_option("id", c.example_id, "example id");
  repro_cmd->add_flag("--all", c.all, "every registry example");
  repro_cmd->add_option("--registry", c.registry, "registry JSON file");
  search_cmd->add_option("--conjecture", c.conjecture, "2 (conic) or 3 (exploratory)");
  search_cmd->add_option("--trials", c.trials, "number of random configurations");
  search_cmd->add_option("--rmin", c.r_min, "smallest r");
  search_cmd->add_option("--rmax", c.r_max, "largest r");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kError;
  }

  try {
    if (*alpha_cmd) return detail::cmd_alpha(c, out);
    if (*seq_cmd) return detail::cmd_alphaseq(c, out);
    if (*dim_cmd) return detail::cmd_dim(c, out, false);
    if (*kernel_cmd) return detail::cmd_dim(c, out, true);
    if (*check_cmd) return detail::cmd_check(c, out);
    if (*repro_cmd) return detail::cmd_repro(c, out, err);
    if (*search_cmd) return detail::cmd_search(c, out);
    if (*plot_cmd) return detail::cmd_plot(c, out);
    if (*gen_cmd) return detail::cmd_generate(c, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace fatpoints::cli
