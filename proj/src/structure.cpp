#include "contour/structure.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "contour/error.hpp"

namespace contour {

namespace {

using ExtSeries = std::vector<ExtCount>;

// For each class: length of its one-child chain (1 for branching classes),
// nullopt when the chain closes into a cycle.
std::vector<std::optional<std::size_t>> one_child_chain(const TreeGrammar& g) {
  const std::size_t k = g.num_classes();
  std::vector<std::optional<std::size_t>> len(k);
  std::vector<int> state(k, 0);
  std::function<void(std::size_t)> visit = [&](std::size_t c) {
    if (state[c] == 2) return;
    if (g.children(c).size() != 1) {
      len[c] = 1;
      state[c] = 2;
      return;
    }
    if (state[c] == 1) return;  // cycle: stays nullopt
    state[c] = 1;
    std::size_t next = g.children(c)[0];
    visit(next);
    if (state[next] == 2 && len[next]) len[c] = *len[next] + 1;
    state[c] = 2;
  };
  for (std::size_t c = 0; c < k; ++c) visit(c);
  return len;
}

ExtSeries mul(const ExtSeries& a, const ExtSeries& b) {
  const std::size_t n = a.size() - 1;
  ExtSeries out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= n; ++j)
      if (!b[j].is_zero()) out[i + j] = out[i + j] + a[i] * b[j];
  }
  return out;
}

ExtSeries add(const ExtSeries& a, const ExtSeries& b) {
  ExtSeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

ExtSeries monomial(std::size_t order, std::size_t degree, const ExtCount& c) {
  ExtSeries s(order + 1);
  if (degree <= order) s[degree] = c;
  return s;
}

}  // namespace

std::optional<PathWitness> find_infinite_independent_path(const TreeGrammar& g) {
  const auto reach = g.reachable_below_root();
  const auto len = one_child_chain(g);
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    if (!reach[c] || len[c]) continue;
    // walk the chain from c until a class repeats; that suffix is the cycle
    std::vector<std::size_t> walk;
    std::vector<int> pos(g.num_classes(), -1);
    std::size_t x = c;
    while (pos[x] < 0) {
      pos[x] = static_cast<int>(walk.size());
      walk.push_back(x);
      x = g.children(x)[0];
    }
    PathWitness w;
    for (std::size_t i = static_cast<std::size_t>(pos[x]); i < walk.size(); ++i)
      w.class_cycle.push_back(g.name(walk[i]));

    // shortest class path from the root class to the cycle entry x, via >= 1 edge
    std::vector<std::size_t> prev(g.num_classes(), SIZE_MAX);
    std::vector<bool> seen(g.num_classes(), false);
    std::deque<std::size_t> queue;
    for (auto k : g.children(g.root_class()))
      if (!seen[k]) {
        seen[k] = true;
        prev[k] = g.root_class();
        queue.push_back(k);
      }
    while (!queue.empty() && !seen[x]) {
      auto v = queue.front();
      queue.pop_front();
      for (auto k : g.children(v))
        if (!seen[k]) {
          seen[k] = true;
          prev[k] = v;
          queue.push_back(k);
        }
    }
    std::vector<std::string> path{g.name(x)};
    for (std::size_t v = prev[x]; ; v = prev[v]) {
      path.push_back(g.name(v));
      if (v == g.root_class() && path.size() > 1) break;
    }
    std::reverse(path.begin(), path.end());
    w.entry_path = std::move(path);
    return w;
  }
  return std::nullopt;
}

std::vector<ExtCount> contour_multiplicities(const TreeGrammar& g, std::size_t n_max, bool rooted_only) {
  const std::size_t k = g.num_classes();
  const auto len = one_child_chain(g);
  const ExtSeries inf_x = monomial(n_max, 1, ExtCount::infinite());
  const ExtSeries x = monomial(n_max, 1, ExtCount(1L));

  // F[t]: boundary series of the part of B below a vertex of class t that is
  // in B. H(c) = X + F[c], or (infinity) X when c starts an infinite ray.
  std::vector<ExtSeries> f(k, ExtSeries(n_max + 1));
  auto h = [&](std::size_t c, std::size_t n) -> ExtCount {
    if (!len[c]) return n == 1 ? ExtCount::infinite() : ExtCount(0L);
    return n == 1 ? f[c][n] + ExtCount(1L) : f[c][n];
  };

  std::vector<std::size_t> chains;  // finite one-child classes, nearest branching first
  for (std::size_t c = 0; c < k; ++c)
    if (g.children(c).size() == 1 && len[c]) chains.push_back(c);
  std::sort(chains.begin(), chains.end(), [&](auto a, auto b) { return *len[a] < *len[b]; });

  std::vector<std::vector<ExtSeries>> prefix(k);
  for (std::size_t t = 0; t < k; ++t)
    if (g.children(t).size() >= 2) prefix[t].assign(g.children(t).size(), ExtSeries(n_max + 1));

  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t t = 0; t < k; ++t) {
      auto kids = g.children(t);
      if (kids.size() < 2) continue;
      for (std::size_t j = 1; j < kids.size(); ++j) {
        ExtCount acc(0L);
        for (std::size_t m = 1; m < n; ++m) {
          const auto& left = prefix[t][j - 1][m];
          if (!left.is_zero()) acc = acc + left * h(kids[j], n - m);
        }
        prefix[t][j][n] = acc;
      }
      f[t][n] = prefix[t].back()[n];
    }
    for (std::size_t t : chains) f[t][n] = h(g.children(t)[0], n);
    for (std::size_t t = 0; t < k; ++t)
      if (g.children(t).size() >= 2) prefix[t][0][n] = h(g.children(t)[0], n);
  }

  auto h_series = [&](std::size_t c) { return len[c] ? add(x, f[c]) : inf_x; };
  // part below a root child that is itself in B
  auto inside = [&](std::size_t c) { return len[c] ? f[c] : inf_x; };

  // none: no root edge cut yet; some: at least one root edge in the contour
  ExtSeries none = monomial(n_max, 0, ExtCount(1L));
  ExtSeries some(n_max + 1);
  for (auto c : g.children(g.root_class())) {
    if (rooted_only) {
      some = add(mul(some, h_series(c)), mul(none, x));
      none = mul(none, inside(c));
    } else {
      none = mul(none, h_series(c));
    }
  }
  return rooted_only ? some : none;
}

ExtCount classify_size(const TreeGrammar& g, std::size_t n) {
  if (n == 0) throw PreconditionError("classify_size needs n >= 1");
  return contour_multiplicities(g, n)[n];
}

FinitenessReport infinitely_many_sizes(const TreeGrammar& g, std::size_t probe_bound) {
  FinitenessReport r;
  r.probe_bound = probe_bound;
  r.witness = find_infinite_independent_path(g);
  r.has_infinite_path = r.witness.has_value();

  // Classes on a cycle of reachable classes, then everything below them.
  const std::size_t k = g.num_classes();
  const auto reach = g.reachable_below_root();
  auto reaches = [&](std::size_t from, std::size_t target) {
    std::vector<bool> seen(k, false);
    std::vector<std::size_t> stack(g.children(from).begin(), g.children(from).end());
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      if (v == target) return true;
      if (seen[v]) continue;
      seen[v] = true;
      for (auto c : g.children(v)) stack.push_back(c);
    }
    return false;
  };
  std::vector<bool> recurring(k, false);
  for (std::size_t c = 0; c < k; ++c)
    if (reach[c] && reaches(c, c)) recurring[c] = true;
  for (std::size_t c = 0; c < k; ++c) {
    if (!recurring[c]) continue;
    std::vector<std::size_t> stack{c};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : g.children(v))
        if (!recurring[w]) {
          recurring[w] = true;
          stack.push_back(w);
        }
    }
  }
  bool branching_recurs = false;
  for (std::size_t c = 0; c < k; ++c)
    if (recurring[c] && g.children(c).size() >= 2) branching_recurs = true;
  r.infinitely_many_sizes = r.has_infinite_path && branching_recurs;

  if (r.has_infinite_path && probe_bound >= 1) {
    auto m = contour_multiplicities(g, probe_bound);
    for (std::size_t n = 1; n <= probe_bound; ++n)
      if (m[n].is_infinite()) r.infinite_sizes_found.push_back(n);
  }
  return r;
}

PathProductReport verify_path_product_identity(const ExplicitTree& tree, std::size_t n,
                                               const std::optional<DepthProfile>& profile) {
  if (n == 0) throw PreconditionError("verify_path_product_identity needs n >= 1");
  PathProductReport r;
  r.n = n;

  EnumerateOptions direct_opt;
  direct_opt.profile = profile;
  auto direct = count_contours(tree, tree.root(), n, direct_opt);
  r.direct_count = direct.count(n) ? direct.at(n) : 0;

  // The contracted tree inherits the truncation checked above.
  auto c = contract_independent_paths(tree);
  EnumerateOptions contracted_opt;
  contracted_opt.check_depth = false;
  auto contours = enumerate_contours(c.contracted.tree, c.contracted.tree.root(), n, contracted_opt);
  if (auto it = contours.find(n); it != contours.end()) {
    r.contracted_contours = it->second.size();
    for (const auto& contour : it->second) {
      mpz_class product = 1;
      for (EdgeId e : contour.edges) product *= static_cast<unsigned long>(c.contracted.edge_length[e]);
      r.weighted_sum += product;
    }
  }
  r.equal = r.weighted_sum == r.direct_count;
  return r;
}

}  // namespace contour
