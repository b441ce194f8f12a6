#include "contour/tree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "contour/error.hpp"

namespace contour {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::input: return "input";
    case ErrorKind::budget: return "budget";
    case ErrorKind::mismatch: return "mismatch";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::shallow: return "truncation_too_shallow";
    case ErrorKind::infinite: return "infinite";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// ExplicitTree

ExplicitTree ExplicitTree::from_children(std::vector<std::vector<VertexId>> children,
                                         std::vector<bool> open_end, VertexId root) {
  const std::size_t n = children.size();
  if (n == 0) throw PreconditionError("tree must have at least one vertex");
  if (open_end.size() != n) throw PreconditionError("open_end size differs from vertex count");
  if (root >= n) throw PreconditionError("root id out of range");

  ExplicitTree t;
  t.root_ = root;
  t.parent_.assign(n, kNoVertex);
  t.open_end_.assign(n, 0);
  t.depth_.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    t.open_end_[v] = open_end[v] ? 1 : 0;
    if (open_end[v] && !children[v].empty())
      throw PreconditionError("open-end vertex " + std::to_string(v) + " has children");
    for (VertexId c : children[v]) {
      if (c >= n) throw PreconditionError("child id out of range");
      if (c == root) throw PreconditionError("root appears as a child");
      if (t.parent_[c] != kNoVertex)
        throw PreconditionError("vertex " + std::to_string(c) + " has two parents");
      t.parent_[c] = static_cast<VertexId>(v);
    }
  }

  // every vertex must be reached exactly once from the root
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<VertexId> stack{root};
  seen[root] = 1;
  std::size_t visited = 0;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    ++visited;
    for (VertexId c : children[v]) {
      if (seen[c]) throw PreconditionError("cycle through vertex " + std::to_string(c));
      seen[c] = 1;
      t.depth_[c] = t.depth_[v] + 1;
      stack.push_back(c);
    }
  }
  if (visited != n) throw PreconditionError("tree is not connected to the root");

  t.children_ = std::move(children);
  return t;
}

std::optional<std::size_t> ExplicitTree::truncation_depth() const {
  std::optional<std::size_t> best;
  for (std::size_t v = 0; v < size(); ++v)
    if (open_end_[v] && (!best || depth_[v] < *best)) best = depth_[v];
  return best;
}

std::size_t ExplicitTree::open_end_count() const {
  return static_cast<std::size_t>(std::count(open_end_.begin(), open_end_.end(), 1));
}

std::vector<VertexId> ExplicitTree::bfs_order() const {
  std::vector<VertexId> order;
  order.reserve(size());
  order.push_back(root_);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (VertexId c : children_[order[i]]) order.push_back(c);
  return order;
}

bool ExplicitTree::is_bfs_numbered() const {
  auto order = bfs_order();
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] != i) return false;
  return true;
}

ExplicitTree renumber_bfs(const std::vector<std::vector<VertexId>>& children,
                          const std::vector<bool>& open_end, VertexId root,
                          std::vector<VertexId>* old_to_new) {
  const std::size_t n = children.size();
  std::vector<VertexId> order;
  order.reserve(n);
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order.size() > n) throw PreconditionError("children lists contain a cycle");
    for (VertexId c : children[order[i]]) order.push_back(c);
  }
  if (order.size() != n) throw PreconditionError("children lists do not form a tree");

  std::vector<VertexId> relabel(n, kNoVertex);
  for (std::size_t i = 0; i < n; ++i) relabel[order[i]] = static_cast<VertexId>(i);

  std::vector<std::vector<VertexId>> out(n);
  std::vector<bool> out_open(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    VertexId old = order[i];
    out_open[i] = open_end[old];
    out[i].reserve(children[old].size());
    for (VertexId c : children[old]) out[i].push_back(relabel[c]);
  }
  if (old_to_new) *old_to_new = std::move(relabel);
  return ExplicitTree::from_children(std::move(out), std::move(out_open), 0);
}

// ---------------------------------------------------------------------------
// TreeGrammar

TreeGrammar::TreeGrammar(std::string root,
                         std::vector<std::pair<std::string, std::vector<std::string>>> classes) {
  std::map<std::string, ClassId> index;
  for (auto& [name, kids] : classes) {
    if (!index.emplace(name, names_.size()).second)
      throw InputError("class '" + name + "' defined twice");
    names_.push_back(name);
  }
  children_.resize(names_.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& kids = classes[c].second;
    if (kids.empty())
      throw InputError("class '" + names_[c] + "' has an empty child list (trees must be leafless)");
    for (const auto& k : kids) {
      auto it = index.find(k);
      if (it == index.end())
        throw InputError("class '" + names_[c] + "' names undefined child class '" + k + "'");
      children_[c].push_back(it->second);
    }
  }
  auto it = index.find(root);
  if (it == index.end()) throw InputError("root class '" + root + "' is not defined");
  root_ = it->second;
}

TreeGrammar TreeGrammar::dary(int d) {
  if (d < 1) throw PreconditionError("d-ary grammar needs d >= 1");
  return TreeGrammar("A", {{"A", std::vector<std::string>(static_cast<std::size_t>(d), "A")}});
}

TreeGrammar TreeGrammar::regular(int k) {
  if (k < 2) throw PreconditionError("regular grammar needs degree >= 2");
  return TreeGrammar("R", {{"R", std::vector<std::string>(static_cast<std::size_t>(k), "A")},
                           {"A", std::vector<std::string>(static_cast<std::size_t>(k - 1), "A")}});
}

std::optional<TreeGrammar::ClassId> TreeGrammar::find(const std::string& name) const {
  for (ClassId c = 0; c < names_.size(); ++c)
    if (names_[c] == name) return c;
  return std::nullopt;
}

std::vector<bool> TreeGrammar::reachable_below_root() const {
  std::vector<bool> seen(names_.size(), false);
  std::vector<ClassId> stack(children_[root_].begin(), children_[root_].end());
  while (!stack.empty()) {
    ClassId c = stack.back();
    stack.pop_back();
    if (seen[c]) continue;
    seen[c] = true;
    for (ClassId k : children_[c])
      if (!seen[k]) stack.push_back(k);
  }
  return seen;
}

ExplicitTree expand_grammar(const TreeGrammar& grammar, std::size_t depth, std::size_t budget) {
  std::vector<std::vector<VertexId>> children(1);
  std::vector<bool> open_end(1, depth == 0);
  std::vector<TreeGrammar::ClassId> cls{grammar.root_class()};
  std::vector<std::size_t> level{0};

  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (level[i] == depth) continue;
    auto kids = grammar.children(cls[i]);
    if (cls.size() + kids.size() > budget)
      throw BudgetError("grammar expansion to depth " + std::to_string(depth) +
                        " exceeds the vertex budget of " + std::to_string(budget));
    for (auto k : kids) {
      auto id = static_cast<VertexId>(cls.size());
      children[i].push_back(id);
      children.emplace_back();
      cls.push_back(k);
      level.push_back(level[i] + 1);
      open_end.push_back(level[i] + 1 == depth);
    }
  }
  return ExplicitTree::from_children(std::move(children), std::move(open_end), 0);
}

// ---------------------------------------------------------------------------
// Minor constructions

std::size_t ContractedTree::max_edge_length() const {
  std::size_t best = 0;
  for (EdgeId e = 0; e < edge_length.size(); ++e)
    if (e != tree.root()) best = std::max(best, edge_length[e]);
  return best;
}

Binarized binarize(const ExplicitTree& tree) {
  const std::size_t n = tree.size();
  // first[v], last[v]: ends of v's replacement chain in provisional numbering
  std::vector<VertexId> first(n), last(n);
  std::vector<std::vector<VertexId>> chain(n);
  std::size_t next = 0;
  for (VertexId y : tree.bfs_order()) {
    auto s = tree.children(y).size();
    if (!tree.is_open_end(y) && s < 2)
      throw PreconditionError("binarize: vertex " + std::to_string(y) + " has " +
                              std::to_string(s) + " children (needs at least two)");
    std::size_t reps = s > 2 ? s - 1 : 1;
    for (std::size_t i = 0; i < reps; ++i) chain[y].push_back(static_cast<VertexId>(next++));
    first[y] = chain[y].front();
    last[y] = chain[y].back();
  }

  std::vector<std::vector<VertexId>> kids(next);
  std::vector<bool> open(next, false);
  for (VertexId y = 0; y < n; ++y) {
    if (tree.is_open_end(y)) {
      open[first[y]] = true;
      continue;
    }
    auto z = tree.children(y);
    const auto& ys = chain[y];
    if (z.size() == 2) {
      kids[ys[0]] = {first[z[0]], first[z[1]]};
      continue;
    }
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) kids[ys[i]] = {first[z[i]], ys[i + 1]};
    kids[ys.back()] = {first[z[z.size() - 2]], first[z.back()]};
  }

  std::vector<VertexId> relabel;
  Binarized out{renumber_bfs(kids, open, first[tree.root()], &relabel), {}};
  out.map.forward.resize(n);
  out.map.edge_map.assign(n, kNoVertex);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId p : chain[v]) out.map.forward[v].push_back(relabel[p]);
    if (v != tree.root()) out.map.edge_map[v] = relabel[first[v]];
  }
  return out;
}

std::vector<EdgeId> binarize_chain_edges(const Binarized& b) {
  std::vector<EdgeId> green;
  for (const auto& reps : b.map.forward)
    for (std::size_t i = 1; i < reps.size(); ++i) green.push_back(reps[i]);
  std::sort(green.begin(), green.end());
  return green;
}

Contracted contract_independent_paths(const ExplicitTree& tree) {
  const std::size_t n = tree.size();
  auto inner = [&](VertexId v) {
    return v != tree.root() && !tree.is_open_end(v) && tree.children(v).size() == 1;
  };
  for (VertexId v = 0; v < n; ++v)
    if (!tree.is_open_end(v) && tree.children(v).empty())
      throw PreconditionError("contract: vertex " + std::to_string(v) +
                              " is a leaf that is not an open end");

  std::vector<VertexId> provisional(n, kNoVertex);
  std::size_t next = 0;
  for (VertexId v : tree.bfs_order())
    if (!inner(v)) provisional[v] = static_cast<VertexId>(next++);

  std::vector<std::vector<VertexId>> kids(next);
  std::vector<bool> open(next, false);
  std::vector<std::size_t> length(next, 0);
  // original edge -> provisional id of the surviving vertex ending its path
  std::vector<VertexId> edge_end(n, kNoVertex);

  for (VertexId u = 0; u < n; ++u) {
    if (inner(u)) continue;
    open[provisional[u]] = tree.is_open_end(u);
    for (VertexId c : tree.children(u)) {
      std::vector<VertexId> path{c};
      VertexId w = c;
      while (inner(w)) {
        w = tree.children(w)[0];
        path.push_back(w);
      }
      kids[provisional[u]].push_back(provisional[w]);
      length[provisional[w]] = path.size();
      for (VertexId e : path) edge_end[e] = provisional[w];
    }
  }

  std::vector<VertexId> relabel;
  ExplicitTree t = renumber_bfs(kids, open, provisional[tree.root()], &relabel);
  std::vector<std::size_t> lengths(next, 0);
  for (std::size_t p = 0; p < next; ++p) lengths[relabel[p]] = length[p];

  Contracted out{{std::move(t), std::move(lengths)}, {}};
  out.map.forward.resize(n);
  out.map.edge_map.assign(n, kNoVertex);
  for (VertexId v = 0; v < n; ++v) {
    if (provisional[v] != kNoVertex) out.map.forward[v].push_back(relabel[provisional[v]]);
    if (edge_end[v] != kNoVertex) out.map.edge_map[v] = relabel[edge_end[v]];
  }
  return out;
}

ExplicitTree subdivide(const ContractedTree& contracted) {
  const auto& t = contracted.tree;
  std::vector<std::vector<VertexId>> kids(t.size());
  std::vector<bool> open(t.size(), false);
  for (VertexId v = 0; v < t.size(); ++v) open[v] = t.is_open_end(v);

  for (VertexId u = 0; u < t.size(); ++u) {
    for (VertexId w : t.children(u)) {
      std::size_t len = contracted.edge_length[w];
      if (len == 0) throw PreconditionError("edge length must be positive");
      VertexId top = u;
      for (std::size_t i = 1; i < len; ++i) {
        auto mid = static_cast<VertexId>(kids.size());
        kids.emplace_back();
        open.push_back(false);
        kids[top].push_back(mid);
        top = mid;
      }
      kids[top].push_back(w);
    }
  }
  return renumber_bfs(kids, open, t.root());
}

ExplicitTree contract_edges(const ExplicitTree& tree, std::span<const EdgeId> edges) {
  std::vector<bool> merge(tree.size(), false);
  for (EdgeId e : edges) {
    if (e == tree.root() || e >= tree.size()) throw PreconditionError("not an edge id");
    if (tree.is_open_end(e)) throw PreconditionError("cannot contract into an open end");
    merge[e] = true;
  }

  std::vector<std::vector<VertexId>> kids(tree.size());
  std::vector<bool> open(tree.size(), false);
  // flatten(u): u's children with merged children replaced by their own lists
  auto flatten = [&](VertexId u) {
    std::vector<VertexId> out;
    std::vector<VertexId> stack(tree.children(u).rbegin(), tree.children(u).rend());
    while (!stack.empty()) {
      VertexId c = stack.back();
      stack.pop_back();
      if (merge[c]) {
        auto cc = tree.children(c);
        stack.insert(stack.end(), cc.rbegin(), cc.rend());
      } else {
        out.push_back(c);
      }
    }
    return out;
  };

  // Surviving vertices keep their ids; merged ones are dropped afterwards.
  std::vector<VertexId> survivors;
  for (VertexId v = 0; v < tree.size(); ++v) {
    if (merge[v]) continue;
    survivors.push_back(v);
    kids[v] = flatten(v);
    open[v] = tree.is_open_end(v);
  }
  std::vector<VertexId> compact(tree.size(), kNoVertex);
  for (std::size_t i = 0; i < survivors.size(); ++i) compact[survivors[i]] = static_cast<VertexId>(i);
  std::vector<std::vector<VertexId>> ck(survivors.size());
  std::vector<bool> co(survivors.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    for (VertexId c : kids[survivors[i]]) ck[i].push_back(compact[c]);
    co[i] = open[survivors[i]];
  }
  return renumber_bfs(ck, co, compact[tree.root()]);
}

bool same_shape(const ExplicitTree& a, const ExplicitTree& b) {
  if (a.size() != b.size()) return false;
  std::deque<std::pair<VertexId, VertexId>> queue{{a.root(), b.root()}};
  while (!queue.empty()) {
    auto [u, v] = queue.front();
    queue.pop_front();
    if (a.is_open_end(u) != b.is_open_end(v)) return false;
    auto ca = a.children(u);
    auto cb = b.children(v);
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i) queue.emplace_back(ca[i], cb[i]);
  }
  return true;
}

}  // namespace contour
