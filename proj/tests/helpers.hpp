#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "contour/tree.hpp"

namespace testing {

using contour::ExplicitTree;
using contour::TreeGrammar;
using contour::VertexId;

inline ExplicitTree make_tree(std::vector<std::vector<VertexId>> children, const std::vector<VertexId>& open) {
  std::vector<bool> flags(children.size(), false);
  for (auto v : open) flags[v] = true;
  return ExplicitTree::from_children(std::move(children), std::move(flags));
}

inline TreeGrammar grammar(const std::string& root,
                           std::vector<std::pair<std::string, std::vector<std::string>>> classes) {
  return TreeGrammar(root, std::move(classes));
}

inline TreeGrammar z_like() { return grammar("R", {{"R", {"P", "P"}}, {"P", {"P"}}}); }
inline TreeGrammar ray() { return grammar("R", {{"R", {"P"}}, {"P", {"P"}}}); }
inline TreeGrammar comb() { return grammar("C", {{"C", {"C", "L"}}, {"L", {"L"}}}); }

/// Grammars in which every class has at least two children; branching
/// mixes 2, 3 and 4.
inline std::vector<TreeGrammar> branching_corpus() {
  return {
      TreeGrammar::dary(2),
      TreeGrammar::dary(3),
      TreeGrammar::dary(4),
      TreeGrammar::regular(3),
      grammar("A", {{"A", {"A", "B"}}, {"B", {"A", "A", "A"}}}),
      grammar("A", {{"A", {"B", "B"}}, {"B", {"A", "A", "A", "A"}}}),
      grammar("R", {{"R", {"A", "B", "C"}}, {"A", {"A", "A"}}, {"B", {"B", "B", "B"}}, {"C", {"A", "C"}}}),
      grammar("X", {{"X", {"Y", "Z"}}, {"Y", {"X", "X", "Z"}}, {"Z", {"Z", "Y", "X", "Z"}}}),
      grammar("A", {{"A", {"B", "C"}}, {"B", {"C", "C", "C"}}, {"C", {"A", "B"}}}),
      grammar("S", {{"S", {"T", "T", "T", "T"}}, {"T", {"S", "S"}}}),
      grammar("P", {{"P", {"Q", "Q", "Q"}}, {"Q", {"Q", "Q", "Q"}}}),
      grammar("M", {{"M", {"M", "N", "N"}}, {"N", {"M", "N"}}}),
  };
}

/// Grammars with min children >= 3 (reachable classes and root).
inline std::vector<TreeGrammar> ternary_corpus() {
  return {
      TreeGrammar::dary(3),
      TreeGrammar::regular(4),
      grammar("A", {{"A", {"A", "A", "B"}}, {"B", {"A", "B", "B", "B"}}}),
      grammar("P", {{"P", {"Q", "Q", "Q"}}, {"Q", {"P", "Q", "Q", "Q"}}}),
  };
}

/// Random tree: every vertex above `depth` gets a child count drawn from
/// `counts`; vertices at `depth` are open ends. Depth-first ids, then
/// renumbered breadth-first.
inline ExplicitTree random_tree(std::mt19937& rng, std::size_t depth, const std::vector<int>& counts) {
  std::vector<std::vector<VertexId>> children(1);
  std::vector<bool> open(1, false);
  std::vector<std::pair<VertexId, std::size_t>> stack{{0, 0}};
  std::uniform_int_distribution<std::size_t> pick(0, counts.size() - 1);
  while (!stack.empty()) {
    auto [v, d] = stack.back();
    stack.pop_back();
    if (d == depth) {
      open[v] = true;
      continue;
    }
    const int k = counts[pick(rng)];
    for (int i = 0; i < k; ++i) {
      const auto w = static_cast<VertexId>(children.size());
      children.emplace_back();
      open.push_back(false);
      children[v].push_back(w);
      stack.emplace_back(w, d + 1);
    }
  }
  return contour::renumber_bfs(children, open, 0);
}

/// Contours around `centre` straight from the definition, over every edge
/// subset of size <= max_size: removing C leaves exactly one finite
/// component (one with no open end), it contains the centre, and no proper
/// subset of C has the same property. Components come from union-find.
class BruteForce {
 public:
  explicit BruteForce(const ExplicitTree& t) : t_(t) {
    for (VertexId v = 0; v < t.size(); ++v)
      if (v != t.root()) edges_.push_back(v);
  }

  // Representative of the unique finite component of tree minus C (C given
  // as a bit mask over edges_), or -1 when there are zero or several.
  // `rep_of` receives the representative of vertex `probe`.
  long single_finite_component(std::uint64_t mask, VertexId probe = 0, VertexId* rep_of = nullptr) const {
    const std::size_t n = t_.size();
    std::vector<VertexId> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](VertexId v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (!(mask >> i & 1)) parent[find(edges_[i])] = find(t_.parent(edges_[i]));
    std::vector<char> infinite(n, 0), present(n, 0);
    for (VertexId v = 0; v < n; ++v) {
      present[find(v)] = 1;
      if (t_.is_open_end(v)) infinite[find(v)] = 1;
    }
    if (rep_of) *rep_of = find(probe);
    long found = -1;
    for (VertexId v = 0; v < n; ++v) {
      if (!present[v] || infinite[v]) continue;
      if (found >= 0) return -1;
      found = v;
    }
    return found;
  }

  bool is_contour_around(std::uint64_t mask, VertexId centre) const {
    VertexId rep = 0;
    auto comp = single_finite_component(mask, centre, &rep);
    if (comp < 0 || rep != static_cast<VertexId>(comp)) return false;
    // no proper subset may leave exactly one finite component
    for (std::uint64_t sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
      if (single_finite_component(sub) >= 0) return false;
      if (sub == 0) break;
    }
    return true;
  }

  /// Sorted edge lists grouped by size.
  std::map<std::size_t, std::set<std::vector<VertexId>>> contours(VertexId centre, std::size_t max_size) const {
    std::map<std::size_t, std::set<std::vector<VertexId>>> out;
    const std::size_t m = edges_.size();
    if (m > 24) throw std::runtime_error("brute force limited to 24 edges");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      const auto k = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (k > max_size) continue;
      if (!is_contour_around(mask, centre)) continue;
      std::vector<VertexId> e;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) e.push_back(edges_[i]);
      out[k].insert(e);
    }
    return out;
  }

 private:
  const ExplicitTree& t_;
  std::vector<VertexId> edges_;
};

}  // namespace testing
