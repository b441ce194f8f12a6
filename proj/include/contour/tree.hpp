#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace contour {

using VertexId = std::uint32_t;

// A rooted-tree edge is named by its child endpoint, so edge ids share the
// vertex id space and the root's id is never an edge.
using EdgeId = VertexId;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr std::size_t kDefaultVertexBudget = 10'000'000;

/// Finite rooted tree with open-end markers.
///
/// An open-end vertex stands for an infinite continuation removed by
/// truncation. It always has zero children, and any component containing one
/// is treated as infinite by the contour code.
class ExplicitTree {
 public:
  /// Validates: exactly one root, every other vertex has one parent, the
  /// traversal from the root reaches every vertex once, open ends are childless.
  /// Throws PreconditionError otherwise.
  static ExplicitTree from_children(std::vector<std::vector<VertexId>> children,
                                    std::vector<bool> open_end, VertexId root = 0);

  std::size_t size() const noexcept { return children_.size(); }
  std::size_t num_edges() const noexcept { return children_.size() - 1; }
  VertexId root() const noexcept { return root_; }

  std::span<const VertexId> children(VertexId v) const { return children_[v]; }
  VertexId parent(VertexId v) const { return parent_[v]; }
  bool is_open_end(VertexId v) const { return open_end_[v] != 0; }
  std::size_t depth(VertexId v) const { return depth_[v]; }

  // δ(x): children plus the parent edge when x is not the root.
  std::size_t degree(VertexId v) const {
    return children_[v].size() + (v == root_ ? 0 : 1);
  }

  /// Smallest depth of an open-end vertex; empty when the tree has none.
  std::optional<std::size_t> truncation_depth() const;

  std::size_t open_end_count() const;

  /// Vertices in breadth-first order from the root, children in stored order.
  std::vector<VertexId> bfs_order() const;

  /// True when ids already follow breadth-first order from root 0.
  bool is_bfs_numbered() const;

  friend bool operator==(const ExplicitTree&, const ExplicitTree&) = default;

 private:
  ExplicitTree() = default;

  VertexId root_ = 0;
  std::vector<std::vector<VertexId>> children_;
  std::vector<VertexId> parent_;
  std::vector<std::uint8_t> open_end_;
  std::vector<std::size_t> depth_;
};

/// Relabels an arbitrary-id tree in breadth-first order (root 0). When
/// old_to_new is given it receives the relabelling.
ExplicitTree renumber_bfs(const std::vector<std::vector<VertexId>>& children,
                          const std::vector<bool>& open_end, VertexId root,
                          std::vector<VertexId>* old_to_new = nullptr);

/// Finite presentation of an infinite leafless rooted tree: every vertex of
/// class t has children whose classes are children(t), in order.
class TreeGrammar {
 public:
  using ClassId = std::size_t;

  /// Throws InputError when a child class is undefined, a class has no
  /// children, a class name repeats, or the root class is missing.
  TreeGrammar(std::string root,
              std::vector<std::pair<std::string, std::vector<std::string>>> classes);

  /// T_d: one class with d children.
  static TreeGrammar dary(int d);
  /// k-regular tree seen from a vertex: root with k children, others k-1.
  static TreeGrammar regular(int k);

  std::size_t num_classes() const noexcept { return names_.size(); }
  ClassId root_class() const noexcept { return root_; }
  const std::string& name(ClassId c) const { return names_[c]; }
  std::span<const ClassId> children(ClassId c) const { return children_[c]; }
  std::optional<ClassId> find(const std::string& name) const;

  /// Classes that occur as a non-root vertex (reachable through ≥1 edge).
  std::vector<bool> reachable_below_root() const;

 private:
  ClassId root_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<ClassId>> children_;
};

/// Breadth-first expansion to the given depth. Vertices at exactly that depth
/// become open ends. Throws BudgetError when the vertex count would exceed
/// the budget.
ExplicitTree expand_grammar(const TreeGrammar& grammar, std::size_t depth,
                            std::size_t budget = kDefaultVertexBudget);

/// Tree whose edges stand for contracted independent paths.
struct ContractedTree {
  ExplicitTree tree;
  // Indexed by EdgeId of `tree`; the root slot is 0. Value 1 means the edge
  // was not contracted.
  std::vector<std::size_t> edge_length;

  std::size_t max_edge_length() const;
};

/// Correspondence between an input tree and a derived tree.
struct VertexMap {
  // forward[v]: vertices of the derived tree that replace v (empty when v was
  // removed).
  std::vector<std::vector<VertexId>> forward;
  // edge_map[e]: derived edge for input edge e; kNoVertex in the root slot.
  std::vector<EdgeId> edge_map;
};

struct Binarized {
  ExplicitTree tree;
  VertexMap map;
};

/// Replaces every vertex with s > 2 children by a chain y_1..y_{s-1} where
/// y_i has children (z_i, y_{i+1}) and y_{s-1} has children (z_{s-1}, z_s).
/// Requires every non-open-end vertex to have at least two children.
Binarized binarize(const ExplicitTree& tree);

/// Edges between consecutive chain vertices introduced by binarize. Contracting
/// exactly these recovers the input tree.
std::vector<EdgeId> binarize_chain_edges(const Binarized& b);

struct Contracted {
  ContractedTree contracted;
  VertexMap map;
};

/// Collapses every maximal independent path (inner vertices are non-root,
/// non-open-end and have exactly one child) to one edge labelled with the
/// path's edge count. The root always survives. Here edge_map is many-to-one:
/// every edge of a path maps to the edge that replaces it.
Contracted contract_independent_paths(const ExplicitTree& tree);

/// Inverse of contraction: each edge of length L becomes a path of L edges.
ExplicitTree subdivide(const ContractedTree& contracted);

/// Contracts the given edges (child merged into parent, its children spliced
/// in place). The child endpoints must not be open ends.
ExplicitTree contract_edges(const ExplicitTree& tree, std::span<const EdgeId> edges);

/// Order-preserving rooted isomorphism, open-end flags included.
bool same_shape(const ExplicitTree& a, const ExplicitTree& b);

}  // namespace contour
