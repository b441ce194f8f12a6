#include "contour/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "contour/counters.hpp"
#include "contour/enumerate.hpp"
#include "contour/error.hpp"
#include "contour/peierls.hpp"
#include "contour/structure.hpp"

namespace contour::cli {

namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// grammar files

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string quoted(const std::string& s) { return Json(s).dump(); }

}  // namespace

TreeGrammar parse_grammar_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte);
    throw InputError("grammar: JSON parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError("grammar: top level must be an object");
  for (const auto& [key, value] : doc.items())
    if (key != "root" && key != "classes")
      throw InputError("grammar: unknown key " + quoted(key) + " (expected \"root\" and \"classes\")");
  if (!doc.contains("root")) throw InputError("grammar: missing key \"root\"");
  if (!doc.contains("classes")) throw InputError("grammar: missing key \"classes\"");
  if (!doc["root"].is_string()) throw InputError("grammar: \"root\" must be a string");
  const auto& classes = doc["classes"];
  if (!classes.is_object()) throw InputError("grammar: \"classes\" must be an object");

  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const auto& [name, kids] : classes.items()) {
    const std::string where = "grammar: classes." + name;
    if (!kids.is_array()) throw InputError(where + " must be an array of class names");
    if (kids.empty()) throw InputError(where + ": empty child list (every vertex needs a child)");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (!kids[i].is_string())
        throw InputError(where + "[" + std::to_string(i) + "] must be a class name string");
      const auto child = kids[i].get<std::string>();
      if (!classes.contains(child))
        throw InputError(where + "[" + std::to_string(i) + "]: undefined class " + quoted(child));
      names.push_back(child);
    }
    out.emplace_back(name, std::move(names));
  }
  const auto root = doc["root"].get<std::string>();
  if (!classes.contains(root)) throw InputError("grammar: root: undefined class " + quoted(root));
  return TreeGrammar(root, std::move(out));
}

TreeGrammar parse_grammar_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("grammar: cannot open " + quoted(path));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_grammar_text(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::size_t resolve_budget(const std::optional<std::size_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CONTOUR_BUDGET"); env && *env) {
    std::size_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [p, ec] = std::from_chars(env, end, v);
    if (ec != std::errc() || p != end || v == 0)
      throw UsageError("CONTOUR_BUDGET must be a positive integer, got " + quoted(env));
    return v;
  }
  return kDefaultVertexBudget;
}

namespace {

// ---------------------------------------------------------------------------
// inputs

struct Family {
  enum Kind { dary, regular } kind;
  int param;
};

struct Input {
  TreeGrammar grammar;
  std::optional<Family> family;
  std::string label;
};

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw UsageError(what + ": not an integer: " + quoted(s));
  return v;
}

Family parse_family(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw UsageError("--family expects dary:d or regular:k, got " + quoted(spec));
  const auto kind = spec.substr(0, colon);
  const int param = parse_int(spec.substr(colon + 1), "--family");
  if (kind == "dary") {
    if (param < 2 || param > 64) throw UsageError("--family dary:d needs 2 <= d <= 64");
    return {Family::dary, param};
  }
  if (kind == "regular") {
    if (param < 3 || param > 65) throw UsageError("--family regular:k needs 3 <= k <= 65");
    return {Family::regular, param};
  }
  throw UsageError("--family expects dary:d or regular:k, got " + quoted(spec));
}

Input load_input(const RunConfig& cfg) {
  if (cfg.family.has_value() == cfg.grammar_path.has_value())
    throw UsageError("give exactly one input: --family or --grammar");
  if (cfg.family) {
    auto f = parse_family(*cfg.family);
    auto g = f.kind == Family::dary ? TreeGrammar::dary(f.param) : TreeGrammar::regular(f.param);
    return {std::move(g), f, *cfg.family};
  }
  return {parse_grammar_file(*cfg.grammar_path), std::nullopt, *cfg.grammar_path};
}

mpq_class parse_rational(const std::string& s, const std::string& flag) {
  auto bad = [&] { return UsageError(flag + ": expected p/q or a decimal, got " + quoted(s)); };
  if (s.empty()) throw bad();
  mpq_class q;
  if (s.find('/') != std::string::npos) {
    if (q.set_str(s, 10) != 0 || sgn(q.get_den()) == 0) throw bad();
    q.canonicalize();
    return q;
  }
  std::string digits = s;
  bool negative = false;
  if (digits[0] == '-' || digits[0] == '+') {
    negative = digits[0] == '-';
    digits.erase(0, 1);
  }
  const auto dot = digits.find('.');
  std::string whole = digits.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : digits.substr(dot + 1);
  auto all_digits = [](const std::string& t) {
    return std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if ((whole.empty() && frac.empty()) || !all_digits(whole) || !all_digits(frac)) throw bad();
  mpz_class num(whole + frac == "" ? "0" : whole + frac, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  q = mpq_class(negative ? mpz_class(-num) : num, den);
  q.canonicalize();
  return q;
}

std::size_t min_children(const TreeGrammar& g) {
  const auto below = g.reachable_below_root();
  std::size_t r = g.children(g.root_class()).size();
  for (std::size_t c = 0; c < g.num_classes(); ++c)
    if (below[c]) r = std::min(r, g.children(c).size());
  return r;
}

// Exact counts around the root. Grammar trees with an infinite independent
// path report every size through the extended semiring.
CountReport counts_for(const Input& in, std::size_t n_max, bool rooted) {
  if (in.family)
    return in.family->kind == Family::dary ? count_dary_report(in.family->param, n_max, rooted)
                                           : count_regular_report(in.family->param, n_max, rooted);
  if (!find_infinite_independent_path(in.grammar)) return count_grammar(in.grammar, n_max, rooted);
  CountReport r{"grammar:" + in.grammar.name(in.grammar.root_class()), rooted, n_max, {}};
  auto m = contour_multiplicities(in.grammar, n_max, rooted);
  for (std::size_t n = 1; n <= n_max; ++n) r.counts[n] = m[n];
  return r;
}

// ---------------------------------------------------------------------------
// output helpers

Json counts_json(const std::map<std::size_t, std::string>& counts) {
  Json j = Json::object();
  for (const auto& [n, v] : counts) j[std::to_string(n)] = v;
  return j;
}

std::map<std::size_t, std::string> as_strings(const CountReport& r) {
  std::map<std::size_t, std::string> out;
  for (std::size_t n = 1; n <= r.order; ++n) {
    auto it = r.counts.find(n);
    out[n] = it == r.counts.end() ? "0" : it->second.to_string();
  }
  return out;
}

std::map<std::size_t, std::string> as_strings(const std::map<std::size_t, std::size_t>& c) {
  std::map<std::size_t, std::string> out;
  for (const auto& [n, v] : c) out[n] = std::to_string(v);
  return out;
}

void write_counts_csv(std::ostream& out, const std::map<std::size_t, std::string>& counts) {
  out << "n,count\n";
  for (const auto& [n, v] : counts) out << n << ',' << v << '\n';
}

Json tree_json(const ExplicitTree& t) {
  Json children = Json::array();
  Json open = Json::array();
  for (VertexId v = 0; v < t.size(); ++v) {
    children.push_back(Json(std::vector<VertexId>(t.children(v).begin(), t.children(v).end())));
    if (t.is_open_end(v)) open.push_back(v);
  }
  return Json{{"root", t.root()}, {"vertices", t.size()}, {"children", children}, {"open_ends", open}};
}

Json map_json(const VertexMap& m) {
  Json edge_map = Json::array();
  for (auto e : m.edge_map) edge_map.push_back(e == kNoVertex ? Json(nullptr) : Json(e));
  return Json{{"forward", m.forward}, {"edge_map", edge_map}};
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

void require_json(const RunConfig& cfg) {
  if (cfg.format != "json")
    throw UsageError("subcommand " + cfg.subcommand + " only supports --format json");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// subcommands

int do_count(const RunConfig& cfg, std::ostream& out) {
  auto in = load_input(cfg);
  auto counts = as_strings(counts_for(in, cfg.n_max, cfg.rooted));
  if (cfg.format == "csv")
    write_counts_csv(out, counts);
  else
    emit(out, Json{{"counts", counts_json(counts)}});
  return kOk;
}

ExplicitTree truncation_for(const Input& in, std::size_t n_max, const RunConfig& cfg, std::size_t* depth) {
  const auto profile = depth_profile(in.grammar);
  *depth = cfg.depth ? *cfg.depth : depth_bound(profile, n_max);
  return expand_grammar(in.grammar, *depth, resolve_budget(cfg.budget));
}

int do_enumerate(const RunConfig& cfg, std::ostream& out) {
  auto in = load_input(cfg);
  std::size_t depth = 0;
  auto tree = truncation_for(in, cfg.n_max, cfg, &depth);
  EnumerateOptions opt;
  opt.rooted_only = cfg.rooted;
  opt.jobs = cfg.jobs;
  opt.profile = depth_profile(in.grammar);
  opt.contour_budget = resolve_budget(cfg.budget);
  auto contours = enumerate_contours(tree, tree.root(), cfg.n_max, opt);

  std::map<std::size_t, std::size_t> counts;
  for (std::size_t n = 1; n <= cfg.n_max; ++n) counts[n] = 0;
  for (const auto& [n, group] : contours) counts[n] = group.size();

  if (cfg.format == "csv") {
    write_counts_csv(out, as_strings(counts));
    return kOk;
  }
  Json list = Json::object();
  for (const auto& [n, group] : contours) {
    Json g = Json::array();
    for (const auto& c : group) g.push_back(Json{{"edges", c.edges}, {"interior", c.interior}});
    list[std::to_string(n)] = std::move(g);
  }
  emit(out, Json{{"counts", counts_json(as_strings(counts))},
                 {"depth", depth},
                 {"vertices", tree.size()},
                 {"contours", list}});
  return kOk;
}

std::map<std::size_t, std::string> load_expected(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("expected counts: cannot open " + quoted(path));
  std::ostringstream buf;
  buf << in.rdbuf();
  Json doc;
  try {
    doc = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col(buf.str(), e.byte);
    throw InputError(path + ": JSON parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
  if (!doc.is_object() || !doc.contains("counts") || doc.size() != 1 || !doc["counts"].is_object())
    throw InputError(path + ": expected {\"counts\": {n: string}}");
  std::map<std::size_t, std::string> out;
  for (const auto& [key, value] : doc["counts"].items()) {
    std::size_t n = 0;
    auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), n);
    if (ec != std::errc() || p != key.data() + key.size() || n == 0)
      throw InputError(path + ": counts." + key + ": size keys must be positive integers");
    if (!value.is_string()) throw InputError(path + ": counts." + key + " must be a decimal string");
    out[n] = value.get<std::string>();
  }
  return out;
}

int do_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto in = load_input(cfg);
  const auto profile = depth_profile(in.grammar);
  const std::size_t needed = depth_bound(profile, cfg.n_max);
  if (cfg.depth && *cfg.depth < needed)
    throw UsageError("verify refuses --depth " + std::to_string(*cfg.depth) + ": sizes up to " +
                     std::to_string(cfg.n_max) + " need depth >= " + std::to_string(needed));
  std::optional<std::map<std::size_t, std::string>> expected;
  if (cfg.expected_path) expected = load_expected(*cfg.expected_path);

  std::size_t depth = 0;
  auto tree = truncation_for(in, cfg.n_max, cfg, &depth);

  CrossCheckOptions copt;
  copt.direct_cap = cfg.direct_cap;
  copt.profile = profile;
  auto cross = cross_check(tree, tree.root(), cfg.n_max, copt);

  auto enumerated = cross.subtree_counts;
  if (cfg.rooted) {
    EnumerateOptions eopt;
    eopt.rooted_only = true;
    eopt.jobs = cfg.jobs;
    eopt.profile = profile;
    eopt.contour_budget = resolve_budget(cfg.budget);
    enumerated = count_contours(tree, tree.root(), cfg.n_max, eopt);
    for (std::size_t n = 1; n <= cfg.n_max; ++n) enumerated.try_emplace(n, 0);
  }
  const auto formula = as_strings(counts_for(in, cfg.n_max, cfg.rooted));

  Json sizes = Json::object();
  std::optional<std::string> first_bad;
  for (std::size_t n = 1; n <= cfg.n_max; ++n) {
    const auto enumerated_n = std::to_string(enumerated[n]);
    bool agree = formula.at(n) == enumerated_n;
    Json row{{"formula", formula.at(n)}, {"enumerated", enumerated_n}};
    if (!cfg.rooted && n <= cross.direct_max) row["direct"] = std::to_string(cross.direct_counts.at(n));
    if (expected) {
      auto it = expected->find(n);
      if (it != expected->end()) {
        row["expected"] = it->second;
        agree = agree && it->second == formula.at(n);
      }
    }
    row["agree"] = agree;
    if (!agree && !first_bad) first_bad = "size " + std::to_string(n);
    sizes[std::to_string(n)] = std::move(row);
  }

  const char* status = first_bad ? "mismatch" : "ok";
  if (cfg.format == "csv") {
    out << "n,formula,enumerated,agree\n";
    for (auto& [n, row] : sizes.items())
      out << n << ',' << row["formula"].get<std::string>() << ',' << row["enumerated"].get<std::string>()
          << ',' << (row["agree"].get<bool>() ? "true" : "false") << '\n';
  } else {
    emit(out, Json{{"verify",
                    {{"input", in.label},
                     {"rooted", cfg.rooted},
                     {"depth", depth},
                     {"vertices", tree.size()},
                     {"direct_max", cross.direct_max},
                     {"subsets_examined", cross.subsets_examined},
                     {"sizes", sizes},
                     {"status", status}}}});
  }
  if (first_bad) throw MismatchError("verify: counts disagree at " + *first_bad);
  (void)err;
  return kOk;
}

int do_analyze(const RunConfig& cfg, std::ostream& out) {
  require_json(cfg);
  auto in = load_input(cfg);
  auto rep = infinitely_many_sizes(in.grammar, cfg.probe_bound);
  Json witness = nullptr;
  if (rep.witness)
    witness = Json{{"class_cycle", rep.witness->class_cycle}, {"entry_path", rep.witness->entry_path}};
  emit(out, Json{{"analysis",
                  {{"has_infinite_path", rep.has_infinite_path},
                   {"infinite_sizes_found", rep.infinite_sizes_found},
                   {"infinitely_many_sizes", rep.infinitely_many_sizes},
                   {"probe_bound", rep.probe_bound},
                   {"witness", witness}}}});
  return kOk;
}

int do_peierls(const RunConfig& cfg, std::ostream& out) {
  require_json(cfg);
  if (cfg.lambda.has_value() == cfg.beta.has_value()) throw UsageError("peierls needs exactly one of --lambda, --beta");
  if (cfg.precision_bits < 64) throw UsageError("--precision-bits must be at least 64");
  auto in = load_input(cfg);

  Json weight;
  std::optional<WeightSpec> w;
  if (cfg.lambda) {
    auto q = parse_rational(*cfg.lambda, "--lambda");
    if (sgn(q) < 0) throw UsageError("--lambda must be non-negative");
    w = WeightSpec::activity(q);
    weight = Json{{"lambda", q.get_str()}};
  } else {
    auto q = parse_rational(*cfg.beta, "--beta");
    if (sgn(q) <= 0) throw UsageError("--beta must be positive");
    w = WeightSpec::exp_beta(q);
    weight = Json{{"beta", q.get_str()}};
  }

  auto counts = counts_for(in, cfg.n_max, cfg.rooted);
  auto sum = peierls_partial_sum(counts, *w, cfg.n_max, cfg.precision_bits);
  auto lam = w->lambda(static_cast<mpfr_prec_t>(cfg.precision_bits));

  Json rep{{"input", in.label},
           {"n_max", cfg.n_max},
           {"precision_bits", cfg.precision_bits},
           {"weight", weight},
           {"activity", {{"lower", lam.lower.to_string(MPFR_RNDD)}, {"upper", lam.upper.to_string(MPFR_RNDU)}}},
           {"partial_sum", {{"lower", sum.lower.to_string(MPFR_RNDD)}, {"upper", sum.upper.to_string(MPFR_RNDU)}}}};
  if (auto exact = peierls_exact_sum(counts, *w, cfg.n_max)) rep["exact"] = exact->get_str();
  std::size_t nonzero = 0;
  for (const auto& [n, c] : counts.counts) nonzero += c.is_zero() ? 0 : 1;
  if (nonzero >= 10) rep["growth_rate"] = format_double(estimate_growth_rate(counts, cfg.n_max));
  if (in.family && in.family->kind == Family::dary) {
    auto lo = critical_activity_bound(in.family->param, cfg.precision_bits);
    auto hi = critical_activity_upper(in.family->param, cfg.precision_bits);
    rep["critical_activity"] = Json{{"lower", lo.to_string(MPFR_RNDD)}, {"upper", hi.to_string(MPFR_RNDU)}};
    rep["below_critical"] = compare(lam.upper, lo) < 0;
  }
  emit(out, Json{{"peierls", rep}});
  return kOk;
}

int do_bounds(const RunConfig& cfg, std::ostream& out) {
  require_json(cfg);
  auto in = load_input(cfg);
  auto counts = as_strings(counts_for(in, cfg.n_max, cfg.rooted));
  const std::size_t r = min_children(in.grammar);

  Json sizes = Json::object();
  for (std::size_t n = 1; n <= cfg.n_max; ++n) {
    Json row{{"count", counts.at(n)}};
    if (r >= 2) row["theorem_bound"] = bound_bollobas(r, n).get_str();
    if (in.family && in.family->kind == Family::dary) {
      const auto d = static_cast<std::size_t>(in.family->param);
      if (n >= 2 && (n - 1) % (d - 1) == 0) {
        auto b = bounds_dary(in.family->param, n);
        row["lower"] = b.lower.get_str();
        row["upper"] = b.upper.to_string(MPFR_RNDU);
      }
    }
    sizes[std::to_string(n)] = std::move(row);
  }
  Json rep{{"input", in.label}, {"min_children", r}, {"sizes", sizes}};
  if (in.family && in.family->kind == Family::dary)
    rep["critical_activity"] = critical_activity_bound(in.family->param).to_string(MPFR_RNDD);
  emit(out, Json{{"bounds", rep}});
  return kOk;
}

ExplicitTree shape_tree(const RunConfig& cfg, const Input& in) {
  const std::size_t depth = cfg.depth.value_or(3);
  return expand_grammar(in.grammar, depth, resolve_budget(cfg.budget));
}

int do_binarize(const RunConfig& cfg, std::ostream& out) {
  require_json(cfg);
  auto in = load_input(cfg);
  auto tree = shape_tree(cfg, in);
  auto b = binarize(tree);
  auto m = map_json(b.map);
  emit(out, Json{{"tree", tree_json(b.tree)},
                 {"forward", m["forward"]},
                 {"edge_map", m["edge_map"]},
                 {"chain_edges", binarize_chain_edges(b)}});
  return kOk;
}

int do_contract(const RunConfig& cfg, std::ostream& out) {
  require_json(cfg);
  auto in = load_input(cfg);
  auto tree = shape_tree(cfg, in);
  auto c = contract_independent_paths(tree);
  auto m = map_json(c.map);
  emit(out, Json{{"tree", tree_json(c.contracted.tree)},
                 {"edge_length", c.contracted.edge_length},
                 {"forward", m["forward"]},
                 {"edge_map", m["edge_map"]}});
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
    case ErrorKind::shallow:
      return kUsage;
    case ErrorKind::input:
    case ErrorKind::precondition:
    case ErrorKind::infinite:
      return kInput;
    case ErrorKind::budget:
      return kBudget;
    case ErrorKind::mismatch:
      return kMismatch;
  }
  return 1;
}

int report_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << Json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << '\n';
  return code;
}

}  // namespace

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.n_max < 1) throw UsageError("--n-max must be at least 1");
    if (cfg.jobs < 1) throw UsageError("--jobs must be at least 1");
    resolve_budget(cfg.budget);  // reject a malformed CONTOUR_BUDGET up front
    if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
    const auto& s = cfg.subcommand;
    if (s == "count") return do_count(cfg, out);
    if (s == "enumerate") return do_enumerate(cfg, out);
    if (s == "verify") return do_verify(cfg, out, err);
    if (s == "analyze") return do_analyze(cfg, out);
    if (s == "peierls") return do_peierls(cfg, out);
    if (s == "bounds") return do_bounds(cfg, out);
    if (s == "binarize") return do_binarize(cfg, out);
    if (s == "contract") return do_contract(cfg, out);
    throw UsageError("unknown subcommand " + quoted(s));
  } catch (const Error& e) {
    return report_error(err, to_string(e.kind()), e.what(), exit_code_for(e.kind()));
  } catch (const std::bad_alloc&) {
    return report_error(err, "budget", "out of memory", kBudget);
  } catch (const std::exception& e) {
    return report_error(err, "internal", e.what(), 1);
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counts and enumerates contours (minimal edge cut sets) on rooted trees."};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string grammar, family, lambda, beta, expected;
  std::size_t depth = 0, budget = 0;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"count", "exact contour counts by size"},
      {"enumerate", "list contours of a truncation"},
      {"verify", "compare formulas with enumeration and edge-subset search"},
      {"analyze", "infinite independent paths and infinite multiplicities"},
      {"peierls", "certified partial Peierls sum"},
      {"bounds", "closed-form bounds next to the exact counts"},
      {"binarize", "binarized truncation with its vertex map"},
      {"contract", "truncation with independent paths contracted"},
  };
  std::vector<CLI::App*> subs;
  std::vector<std::pair<CLI::Option*, CLI::Option*>> seen;  // depth, budget
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    auto* g = sub->add_option("--grammar", grammar, "grammar JSON file");
    auto* f = sub->add_option("--family", family, "built-in tree: dary:d or regular:k");
    g->excludes(f);
    sub->add_option("--n-max", cfg.n_max, "largest contour size")->check(CLI::PositiveNumber);
    sub->add_flag("--rooted", cfg.rooted, "only contours with an edge at the root");
    auto* d = sub->add_option("--depth", depth, "truncation depth override");
    auto* b = sub->add_option("--budget", budget, "vertex budget (default 10^7, env CONTOUR_BUDGET)")
                  ->check(CLI::PositiveNumber);
    sub->add_option("--precision-bits", cfg.precision_bits, "MPFR precision")->check(CLI::Range(64U, 1U << 20));
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--jobs", cfg.jobs, "worker threads for enumeration")->check(CLI::Range(1U, 1024U));
    sub->add_option("--probe", cfg.probe_bound, "analyze: largest size probed");
    sub->add_option("--direct-cap", cfg.direct_cap, "verify: largest size for edge-subset search");
    if (name == "peierls") {
      auto* l = sub->add_option("--lambda", lambda, "activity lambda (p/q or decimal)");
      auto* be = sub->add_option("--beta", beta, "lambda = exp(-2 beta)");
      l->excludes(be);
    }
    if (name == "verify") sub->add_option("--expected", expected, "stored counts JSON to check against");
    subs.push_back(sub);
    seen.emplace_back(d, b);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report_error(err, "usage", e.what(), kUsage);
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    auto* sub = subs[i];
    if (!sub->parsed()) continue;
    cfg.subcommand = sub->get_name();
    if (sub->get_option("--grammar")->count()) cfg.grammar_path = grammar;
    if (sub->get_option("--family")->count()) cfg.family = family;
    if (seen[i].first->count()) cfg.depth = depth;
    if (seen[i].second->count()) cfg.budget = budget;
    if (cfg.subcommand == "peierls") {
      if (sub->get_option("--lambda")->count()) cfg.lambda = lambda;
      if (sub->get_option("--beta")->count()) cfg.beta = beta;
    }
    if (cfg.subcommand == "verify" && sub->get_option("--expected")->count()) cfg.expected_path = expected;
  }
  return dispatch(cfg, out, err);
}

}  // namespace contour::cli
