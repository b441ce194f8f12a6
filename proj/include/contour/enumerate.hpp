#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contour/tree.hpp"

namespace contour {

/// An edge set with its interior, the unique finite component left when the
/// edges are removed. Both lists are sorted ascending.
struct Contour {
  std::vector<EdgeId> edges;
  std::vector<VertexId> interior;

  std::size_t size() const noexcept { return edges.size(); }
  friend bool operator==(const Contour&, const Contour&) = default;
};

/// Contours grouped by size; each group sorted lexicographically by edges.
using ContourSet = std::map<std::size_t, std::vector<Contour>>;

/// Interior of `edges` when they form a contour of `tree`, empty otherwise.
/// A component is finite iff it holds no open-end vertex. Throws
/// PreconditionError on ids that are not edges or on repeated edges.
std::optional<std::vector<VertexId>> contour_interior(const ExplicitTree& tree,
                                                      std::span<const EdgeId> edges);

inline bool is_contour(const ExplicitTree& tree, std::span<const EdgeId> edges) {
  return contour_interior(tree, edges).has_value();
}

/// Minimal-children / contracted-path description used for truncation depth.
struct DepthProfile {
  std::size_t min_children = 2;    // r: fewest children of a non-root branching vertex
  std::size_t root_children = 2;   // children of the centre vertex
  std::size_t max_path_length = 1; // L: longest contracted independent path
};

/// floor((n-1)/(r-1)) * L + 1.
std::size_t depth_bound(std::size_t min_children, std::size_t max_path_length, std::size_t n);

/// Same bound, tightened for the centre's own child count c:
/// (1 + floor((n-c)/(r-1))) * L + 1, and 1 when n < c.
std::size_t depth_bound(const DepthProfile& profile, std::size_t n);

/// Profile read off the visible part of a truncated tree. Branching below
/// the truncation is assumed to be at least binary.
DepthProfile depth_profile(const ExplicitTree& tree);

/// Exact profile of the infinite tree. Throws InfiniteCoefficients when an
/// infinite independent path is reachable (contraction leaves r < 2).
DepthProfile depth_profile(const TreeGrammar& grammar);

/// Truncation of a grammar tree that is exact for every contour of size up
/// to certified_n_max: a vertex is expanded only when the path from the root
/// to it has external boundary at most that size.
struct SizeTruncation {
  ExplicitTree tree;
  std::size_t certified_n_max = 0;
};

SizeTruncation truncate_for_size(const TreeGrammar& grammar, std::size_t n_max,
                                 std::size_t budget = kDefaultVertexBudget);

struct EnumerateOptions {
  bool rooted_only = false;           // keep contours with an edge at the centre
  unsigned jobs = 1;                  // worker threads for the subtree search
  std::optional<DepthProfile> profile;  // overrides depth_profile(tree)
  bool check_depth = true;
  std::size_t contour_budget = kDefaultVertexBudget;
};

/// One contour per finite connected vertex set B that contains `centre`,
/// avoids open ends and has external boundary at most n_max. Throws
/// TruncationTooShallow when the nearest open end is closer than
/// depth_bound(profile, n_max).
ContourSet enumerate_contours(const ExplicitTree& tree, VertexId centre, std::size_t n_max,
                              const EnumerateOptions& options = {});

ContourSet enumerate_contours(const SizeTruncation& truncation, std::size_t n_max,
                              EnumerateOptions options = {});

/// Same search, counting only.
std::map<std::size_t, std::size_t> count_contours(const ExplicitTree& tree, VertexId centre,
                                                  std::size_t n_max,
                                                  const EnumerateOptions& options = {});

std::map<std::size_t, std::size_t> count_contours(const SizeTruncation& truncation,
                                                  std::size_t n_max, EnumerateOptions options = {});

struct CrossCheckOptions {
  std::size_t direct_cap = 6;   // largest size checked by edge-subset search
  std::optional<DepthProfile> profile;
  bool check_depth = true;
  std::size_t subset_budget = 200'000'000;
};

struct CrossCheckReport {
  std::map<std::size_t, std::size_t> subtree_counts;  // sizes 1..n_max
  std::map<std::size_t, std::size_t> direct_counts;   // sizes 1..direct_max
  std::size_t direct_max = 0;
  std::size_t subsets_examined = 0;
};

/// Runs the subtree-boundary enumeration and an independent search over edge
/// subsets filtered by contour_interior, then compares them size by size.
/// Throws MismatchError naming the first contour found by only one method.
CrossCheckReport cross_check(const ExplicitTree& tree, VertexId centre, std::size_t n_max,
                             const CrossCheckOptions& options = {});

std::string describe(const Contour& c);

}  // namespace contour
