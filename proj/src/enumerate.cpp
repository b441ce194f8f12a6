#include "contour/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "contour/error.hpp"

namespace contour {

// ---------------------------------------------------------------------------
// Contour test

namespace {

// Contour test with scratch buffers that are reused across calls; only the
// entries touched by a call are reset afterwards.
class ContourChecker {
 public:
  explicit ContourChecker(const ExplicitTree& tree) : tree_(tree), cut_(tree.size(), 0) {}

  std::optional<std::vector<VertexId>> interior(std::span<const EdgeId> edges) {
    const std::size_t n = tree_.size();
    std::size_t marked = 0;
    auto unmark = [&] {
      for (std::size_t i = 0; i < marked; ++i) cut_[edges[i]] = 0;
    };
    for (EdgeId e : edges) {
      if (e >= n || e == tree_.root()) {
        unmark();
        throw PreconditionError("id " + std::to_string(e) + " is not an edge");
      }
      if (cut_[e]) {
        unmark();
        throw PreconditionError("edge " + std::to_string(e) + " repeated");
      }
      cut_[e] = 1;
      ++marked;
    }
    auto result = evaluate(edges);
    unmark();
    return result;
  }

 private:
  // Each component of tree \ edges has a unique highest vertex: the root or
  // the lower endpoint of a removed edge.
  VertexId top_of(VertexId v) const {
    while (v != tree_.root() && !cut_[v]) v = tree_.parent(v);
    return v;
  }

  // Walks the component below `top`; gives up as soon as an open end shows
  // the component is infinite.
  bool finite_component(VertexId top, std::vector<VertexId>& members) {
    members.clear();
    stack_.assign(1, top);
    while (!stack_.empty()) {
      VertexId v = stack_.back();
      stack_.pop_back();
      if (tree_.is_open_end(v)) return false;
      members.push_back(v);
      for (VertexId c : tree_.children(v))
        if (!cut_[c]) stack_.push_back(c);
    }
    return true;
  }

  std::optional<std::vector<VertexId>> evaluate(std::span<const EdgeId> edges) {
    std::optional<VertexId> finite_top;
    std::vector<VertexId> interior;
    auto consider = [&](VertexId top) {
      if (!finite_component(top, scratch_)) return true;
      if (finite_top) return false;  // second finite component
      finite_top = top;
      interior = scratch_;
      return true;
    };
    if (!consider(tree_.root())) return std::nullopt;
    for (EdgeId e : edges)
      if (!consider(e)) return std::nullopt;
    if (!finite_top) return std::nullopt;

    // With exactly one finite component F, putting an edge back leaves no
    // finite component iff that edge touches F. So minimality means every
    // removed edge is incident to F.
    for (EdgeId e : edges)
      if (e != *finite_top && top_of(tree_.parent(e)) != *finite_top) return std::nullopt;

    std::sort(interior.begin(), interior.end());
    return interior;
  }

  const ExplicitTree& tree_;
  std::vector<std::uint8_t> cut_;
  std::vector<VertexId> stack_, scratch_;
};

}  // namespace

std::optional<std::vector<VertexId>> contour_interior(const ExplicitTree& tree,
                                                      std::span<const EdgeId> edges) {
  return ContourChecker(tree).interior(edges);
}

std::string describe(const Contour& c) {
  std::ostringstream os;
  os << "{edges:[";
  for (std::size_t i = 0; i < c.edges.size(); ++i) os << (i ? "," : "") << c.edges[i];
  os << "], interior:[";
  for (std::size_t i = 0; i < c.interior.size(); ++i) os << (i ? "," : "") << c.interior[i];
  os << "]}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Depth bounds

std::size_t depth_bound(std::size_t min_children, std::size_t max_path_length, std::size_t n) {
  if (min_children < 2)
    throw InfiniteCoefficients("minimum branching below 2 after contraction: an infinite independent path exists");
  if (n == 0) throw PreconditionError("depth_bound needs n >= 1");
  return (n - 1) / (min_children - 1) * max_path_length + 1;
}

std::size_t depth_bound(const DepthProfile& p, std::size_t n) {
  if (p.min_children < 2)
    throw InfiniteCoefficients("minimum branching below 2 after contraction: an infinite independent path exists");
  if (n == 0) throw PreconditionError("depth_bound needs n >= 1");
  if (n < p.root_children) return 1;
  const std::size_t interior = 1 + (n - p.root_children) / (p.min_children - 1);
  return interior * std::max<std::size_t>(p.max_path_length, 1) + 1;
}

DepthProfile depth_profile(const ExplicitTree& tree) {
  auto c = contract_independent_paths(tree);
  const auto& t = c.contracted.tree;
  DepthProfile p;
  p.root_children = tree.children(tree.root()).size();
  std::size_t r = 0;
  for (VertexId v = 0; v < t.size(); ++v) {
    if (v == t.root() || t.is_open_end(v)) continue;
    std::size_t k = t.children(v).size();
    r = r == 0 ? k : std::min(r, k);
  }
  p.min_children = r == 0 ? 2 : r;
  p.max_path_length = std::max<std::size_t>(1, c.contracted.max_edge_length());
  return p;
}

namespace {

// Edge count of the contracted path that starts with an edge into class c,
// or nullopt when the one-child chain from c never ends.
std::vector<std::optional<std::size_t>> chain_lengths(const TreeGrammar& g) {
  const std::size_t k = g.num_classes();
  std::vector<std::optional<std::size_t>> len(k);
  std::vector<int> state(k, 0);  // 0 new, 1 on current walk, 2 done
  for (std::size_t start = 0; start < k; ++start) {
    std::vector<std::size_t> path;
    std::size_t c = start;
    while (state[c] == 0 && g.children(c).size() == 1) {
      state[c] = 1;
      path.push_back(c);
      c = g.children(c)[0];
    }
    std::optional<std::size_t> tail;
    if (state[c] == 2) {
      tail = len[c];
    } else if (state[c] == 0) {  // branching class
      state[c] = 2;
      len[c] = tail = 1;
    }  // state 1: the walk closed a one-child cycle, tail stays infinite
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (tail) tail = *tail + 1;
      len[*it] = tail;
      state[*it] = 2;
    }
  }
  return len;
}

}  // namespace

DepthProfile depth_profile(const TreeGrammar& g) {
  auto reach = g.reachable_below_root();
  auto len = chain_lengths(g);
  for (std::size_t c = 0; c < g.num_classes(); ++c)
    if (reach[c] && !len[c])
      throw InfiniteCoefficients("class '" + g.name(c) + "' starts an infinite independent path");

  DepthProfile p;
  p.root_children = g.children(g.root_class()).size();
  std::size_t r = 0, L = 1;
  auto visit_edges = [&](std::size_t from) {
    for (auto k : g.children(from)) L = std::max(L, *len[k]);
  };
  visit_edges(g.root_class());
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    if (!reach[c] || g.children(c).size() < 2) continue;
    r = r == 0 ? g.children(c).size() : std::min(r, g.children(c).size());
    visit_edges(c);
  }
  p.min_children = r == 0 ? 2 : r;
  p.max_path_length = L;
  return p;
}

SizeTruncation truncate_for_size(const TreeGrammar& g, std::size_t n_max, std::size_t budget) {
  depth_profile(g);  // rejects infinite independent paths

  std::vector<std::vector<VertexId>> children(1);
  std::vector<bool> open(1, false);
  std::vector<std::size_t> cls{g.root_class()};
  // boundary of the path from the root to each vertex, were it the whole of B
  std::vector<std::size_t> path_boundary{g.children(g.root_class()).size()};

  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (i != 0 && path_boundary[i] > n_max) {
      open[i] = true;
      continue;
    }
    auto kids = g.children(cls[i]);
    if (cls.size() + kids.size() > budget)
      throw BudgetError("size-adaptive truncation for n <= " + std::to_string(n_max) +
                        " exceeds the vertex budget of " + std::to_string(budget));
    for (auto k : kids) {
      children[i].push_back(static_cast<VertexId>(cls.size()));
      children.emplace_back();
      open.push_back(false);
      cls.push_back(k);
      path_boundary.push_back(path_boundary[i] + g.children(k).size() - 1);
    }
  }
  return {ExplicitTree::from_children(std::move(children), std::move(open), 0), n_max};
}

// ---------------------------------------------------------------------------
// Subtree-boundary search

namespace {

struct Entry {
  VertexId v;
  VertexId from;  // neighbour already in B
};

struct SearchState {
  std::vector<VertexId> interior;
  std::vector<Entry> frontier;
  std::vector<Entry> closed;
};

template <class Sink>
class SubtreeSearch {
 public:
  SubtreeSearch(const ExplicitTree& t, VertexId centre, std::size_t n_max, bool rooted_only, Sink& sink)
      : t_(t), centre_(centre), n_max_(n_max), rooted_only_(rooted_only), sink_(sink) {}

  SearchState initial() const {
    SearchState s;
    s.interior.push_back(centre_);
    for_each_neighbour(centre_, kNoVertex, [&](VertexId w) { s.frontier.push_back({w, centre_}); });
    return s;
  }

  // Runs the search below `s`. With split_depth set, states at that decision
  // depth are handed to `park` instead of being explored.
  template <class Park>
  void run(SearchState& s, std::size_t split_depth, Park&& park) {
    state_ = &s;
    recurse(0, split_depth, park);
  }

 private:
  template <class F>
  void for_each_neighbour(VertexId v, VertexId skip, F&& f) const {
    for (VertexId c : t_.children(v))
      if (c != skip) f(c);
    if (v != t_.root() && t_.parent(v) != skip) f(t_.parent(v));
  }

  template <class Park>
  void recurse(std::size_t depth, std::size_t split_depth, Park& park) {
    auto& s = *state_;
    if (s.frontier.size() + s.closed.size() > n_max_) return;
    if (s.frontier.empty()) {
      emit();
      return;
    }
    if (depth == split_depth) {
      park(s);
      return;
    }
    Entry e = s.frontier.back();
    s.frontier.pop_back();

    s.closed.push_back(e);
    recurse(depth + 1, split_depth, park);
    s.closed.pop_back();

    if (!t_.is_open_end(e.v)) {
      s.interior.push_back(e.v);
      const std::size_t before = s.frontier.size();
      for_each_neighbour(e.v, e.from, [&](VertexId w) { s.frontier.push_back({w, e.v}); });
      recurse(depth + 1, split_depth, park);
      s.frontier.resize(before);
      s.interior.pop_back();
    }
    s.frontier.push_back(e);
  }

  void emit() {
    const auto& s = *state_;
    if (rooted_only_) {
      bool touches = std::any_of(s.closed.begin(), s.closed.end(),
                                 [&](const Entry& e) { return e.from == centre_; });
      if (!touches) return;
    }
    sink_(t_, s);
  }

  const ExplicitTree& t_;
  VertexId centre_;
  std::size_t n_max_;
  bool rooted_only_;
  Sink& sink_;
  SearchState* state_ = nullptr;
};

Contour make_contour(const ExplicitTree& t, const SearchState& s) {
  Contour c;
  c.edges.reserve(s.closed.size());
  for (const auto& e : s.closed) c.edges.push_back(t.parent(e.v) == e.from ? e.v : e.from);
  c.interior = s.interior;
  std::sort(c.edges.begin(), c.edges.end());
  std::sort(c.interior.begin(), c.interior.end());
  return c;
}

std::size_t distance_to_open_end(const ExplicitTree& t, VertexId centre) {
  std::vector<std::size_t> dist(t.size(), SIZE_MAX);
  std::deque<VertexId> queue{centre};
  dist[centre] = 0;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (t.is_open_end(v)) return dist[v];
    auto push = [&](VertexId w) {
      if (dist[w] == SIZE_MAX) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    };
    for (VertexId c : t.children(v)) push(c);
    if (v != t.root()) push(t.parent(v));
  }
  return SIZE_MAX;
}

void check_leafless(const ExplicitTree& t, VertexId centre) {
  for (VertexId v = 0; v < t.size(); ++v) {
    if (t.is_open_end(v) || v == centre) continue;
    if (t.degree(v) < 2)
      throw PreconditionError("vertex " + std::to_string(v) +
                              " is a leaf that is not an open end; contours need a leafless tree");
  }
}

DepthProfile resolve_profile(const ExplicitTree& t, VertexId centre, const std::optional<DepthProfile>& given) {
  DepthProfile p = given ? *given : depth_profile(t);
  if (!given && centre != t.root()) p.root_children = std::min(p.root_children, t.degree(centre));
  return p;
}

void check_depth(const ExplicitTree& t, VertexId centre, std::size_t n_max, const DepthProfile& p) {
  const std::size_t need = depth_bound(p, n_max);
  const std::size_t have = distance_to_open_end(t, centre);
  if (have < need)
    throw TruncationTooShallow("nearest open end is at distance " + std::to_string(have) +
                               " but sizes up to " + std::to_string(n_max) + " need depth " +
                               std::to_string(need));
}

template <class Sink>
void run_search(const ExplicitTree& t, VertexId centre, std::size_t n_max, const EnumerateOptions& opt,
                std::vector<Sink>& sinks) {
  if (centre >= t.size()) throw PreconditionError("centre vertex out of range");
  if (t.is_open_end(centre)) throw PreconditionError("centre vertex is an open end");
  if (n_max == 0) throw PreconditionError("n_max must be at least 1");
  check_leafless(t, centre);
  if (opt.check_depth) check_depth(t, centre, n_max, resolve_profile(t, centre, opt.profile));

  const unsigned jobs = std::max(1U, opt.jobs);
  sinks.resize(jobs);
  if (jobs == 1) {
    SubtreeSearch<Sink> search(t, centre, n_max, opt.rooted_only, sinks[0]);
    auto s = search.initial();
    search.run(s, SIZE_MAX, [](SearchState&) {});
    return;
  }

  // Split the decision tree a few levels down and farm the parked states out.
  std::vector<SearchState> parked;
  {
    SubtreeSearch<Sink> search(t, centre, n_max, opt.rooted_only, sinks[0]);
    auto s = search.initial();
    std::size_t split = 3;
    while ((1U << split) < 8 * jobs) ++split;
    search.run(s, split, [&](SearchState& st) { parked.push_back(st); });
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        SubtreeSearch<Sink> search(t, centre, n_max, opt.rooted_only, sinks[w]);
        for (std::size_t i = next++; i < parked.size(); i = next++)
          search.run(parked[i], SIZE_MAX, [](SearchState&) {});
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

struct CollectSink {
  std::vector<Contour> found;
  std::size_t budget = kDefaultVertexBudget;
  void operator()(const ExplicitTree& t, const SearchState& s) {
    if (found.size() >= budget) throw BudgetError("contour budget exceeded");
    found.push_back(make_contour(t, s));
  }
};

struct CountSink {
  std::map<std::size_t, std::size_t> counts;
  void operator()(const ExplicitTree&, const SearchState& s) { ++counts[s.closed.size()]; }
};

}  // namespace

ContourSet enumerate_contours(const ExplicitTree& tree, VertexId centre, std::size_t n_max,
                              const EnumerateOptions& options) {
  std::vector<CollectSink> sinks;
  const unsigned jobs = std::max(1U, options.jobs);
  sinks.resize(jobs);
  for (auto& s : sinks) s.budget = options.contour_budget;
  run_search(tree, centre, n_max, options, sinks);

  ContourSet out;
  for (auto& sink : sinks)
    for (auto& c : sink.found) out[c.size()].push_back(std::move(c));
  for (auto& [size, group] : out)
    std::sort(group.begin(), group.end(),
              [](const Contour& a, const Contour& b) { return a.edges < b.edges; });
  return out;
}

ContourSet enumerate_contours(const SizeTruncation& truncation, std::size_t n_max,
                              EnumerateOptions options) {
  if (n_max > truncation.certified_n_max)
    throw TruncationTooShallow("truncation certified up to size " +
                               std::to_string(truncation.certified_n_max) + ", asked for " +
                               std::to_string(n_max));
  options.check_depth = false;
  return enumerate_contours(truncation.tree, truncation.tree.root(), n_max, options);
}

std::map<std::size_t, std::size_t> count_contours(const ExplicitTree& tree, VertexId centre,
                                                  std::size_t n_max, const EnumerateOptions& options) {
  std::vector<CountSink> sinks;
  run_search(tree, centre, n_max, options, sinks);
  std::map<std::size_t, std::size_t> out;
  for (auto& s : sinks)
    for (auto [size, k] : s.counts) out[size] += k;
  return out;
}

std::map<std::size_t, std::size_t> count_contours(const SizeTruncation& truncation, std::size_t n_max,
                                                  EnumerateOptions options) {
  if (n_max > truncation.certified_n_max)
    throw TruncationTooShallow("truncation certified up to size " +
                               std::to_string(truncation.certified_n_max) + ", asked for " +
                               std::to_string(n_max));
  options.check_depth = false;
  return count_contours(truncation.tree, truncation.tree.root(), n_max, options);
}

// ---------------------------------------------------------------------------
// Dual-oracle check

namespace {

// Searches antichains of edges (no chosen edge lies beyond another, seen from
// the centre) and keeps those that contour_interior accepts around the centre.
class DirectSearch {
 public:
  DirectSearch(const ExplicitTree& t, VertexId centre, std::size_t max_size, std::size_t max_depth,
               std::size_t budget)
      : t_(t), centre_(centre), max_size_(max_size), budget_(budget), checker_(t) {
    const std::size_t n = t.size();
    up_.assign(n, kNoVertex);
    depth_.assign(n, 0);
    chosen_.assign(n, 0);
    below_.assign(n, 0);
    std::vector<VertexId> order{centre};
    std::vector<std::uint8_t> seen(n, 0);
    seen[centre] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      VertexId v = order[i];
      auto visit = [&](VertexId w) {
        if (seen[w]) return;
        seen[w] = 1;
        up_[w] = v;
        depth_[w] = depth_[v] + 1;
        order.push_back(w);
      };
      for (VertexId c : t.children(v)) visit(c);
      if (v != t.root()) visit(t.parent(v));
    }
    // candidate edges, each named by its endpoint away from the centre
    for (VertexId w = 0; w < n; ++w)
      if (w != centre && depth_[w] <= max_depth) far_.push_back(w);
  }

  void run() { choose(0); }

  std::set<std::vector<EdgeId>> found;
  std::size_t examined = 0;

 private:
  EdgeId edge_of(VertexId far) const { return t_.parent(far) == up_[far] ? far : up_[far]; }

  bool blocked(VertexId far) const {
    if (below_[far] != 0) return true;
    for (VertexId v = up_[far]; v != kNoVertex; v = up_[v])
      if (chosen_[v]) return true;
    return false;
  }

  void mark(VertexId far, int delta) {
    chosen_[far] = delta > 0;
    for (VertexId v = up_[far]; v != kNoVertex; v = up_[v]) below_[v] += delta;
  }

  void choose(std::size_t start) {
    for (std::size_t i = start; i < far_.size(); ++i) {
      VertexId f = far_[i];
      if (blocked(f)) continue;
      mark(f, +1);
      current_.push_back(edge_of(f));
      evaluate();
      if (current_.size() < max_size_) choose(i + 1);
      current_.pop_back();
      mark(f, -1);
    }
  }

  void evaluate() {
    if (++examined > budget_) throw BudgetError("direct contour search exceeded its subset budget");
    auto interior = checker_.interior(current_);
    if (!interior || !std::binary_search(interior->begin(), interior->end(), centre_)) return;
    auto edges = current_;
    std::sort(edges.begin(), edges.end());
    found.insert(std::move(edges));
  }

  const ExplicitTree& t_;
  VertexId centre_;
  std::size_t max_size_;
  std::size_t budget_;
  ContourChecker checker_;
  std::vector<VertexId> up_;
  std::vector<std::size_t> depth_;
  std::vector<std::uint8_t> chosen_;
  std::vector<int> below_;
  std::vector<VertexId> far_;
  std::vector<EdgeId> current_;
};

std::string edge_list(const std::vector<EdgeId>& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "]";
}

}  // namespace

CrossCheckReport cross_check(const ExplicitTree& tree, VertexId centre, std::size_t n_max,
                             const CrossCheckOptions& options) {
  EnumerateOptions eopt;
  eopt.profile = options.profile;
  eopt.check_depth = options.check_depth;
  auto contours = enumerate_contours(tree, centre, n_max, eopt);

  CrossCheckReport report;
  for (std::size_t n = 1; n <= n_max; ++n) report.subtree_counts[n] = 0;
  for (const auto& [size, group] : contours) {
    report.subtree_counts[size] = group.size();
    for (const auto& c : group) {
      auto interior = contour_interior(tree, c.edges);
      if (!interior || *interior != c.interior)
        throw MismatchError("subtree enumeration emitted " + describe(c) +
                            ", which fails the contour definition");
    }
  }

  report.direct_max = std::min(n_max, options.direct_cap);
  if (report.direct_max == 0) return report;
  const auto profile = resolve_profile(tree, centre, options.profile);
  const std::size_t reach = depth_bound(profile, report.direct_max) - 1;
  DirectSearch direct(tree, centre, report.direct_max, reach, options.subset_budget);
  direct.run();
  report.subsets_examined = direct.examined;

  std::set<std::vector<EdgeId>> from_subtrees;
  for (const auto& [size, group] : contours)
    if (size <= report.direct_max)
      for (const auto& c : group) from_subtrees.insert(c.edges);

  for (std::size_t n = 1; n <= report.direct_max; ++n) report.direct_counts[n] = 0;
  for (const auto& e : direct.found) ++report.direct_counts[e.size()];

  for (const auto& e : direct.found)
    if (!from_subtrees.count(e))
      throw MismatchError("edge-subset search found contour " + edge_list(e) +
                          " missing from the subtree enumeration");
  for (const auto& e : from_subtrees)
    if (!direct.found.count(e))
      throw MismatchError("subtree enumeration found contour " + edge_list(e) +
                          " missing from the edge-subset search");
  return report;
}

}  // namespace contour
