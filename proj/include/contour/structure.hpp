#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "contour/enumerate.hpp"
#include "contour/ext_count.hpp"
#include "contour/tree.hpp"

namespace contour {

/// A cycle of one-child classes reachable from the root. Every vertex of a
/// cycle class starts a ray whose inner vertices all have degree two.
struct PathWitness {
  std::vector<std::string> class_cycle;
  std::vector<std::string> entry_path;  // root class ... first cycle class
};

std::optional<PathWitness> find_infinite_independent_path(const TreeGrammar& grammar);

/// Number of contours around the root of each size 0..n_max, infinite where
/// some contour of that size uses an edge of an infinite independent path.
///
/// Uses F_t = prod (X + F_c) with X + F_c replaced by (infinity) X whenever c
/// starts an infinite one-child chain: cutting anywhere along such a ray
/// gives infinitely many contours of the same size.
std::vector<ExtCount> contour_multiplicities(const TreeGrammar& grammar, std::size_t n_max,
                                             bool rooted_only = false);

ExtCount classify_size(const TreeGrammar& grammar, std::size_t n);

struct FinitenessReport {
  bool has_infinite_path = false;
  std::optional<PathWitness> witness;
  bool infinitely_many_sizes = false;
  std::vector<std::size_t> infinite_sizes_found;  // sizes <= probe_bound
  std::size_t probe_bound = 0;
};

/// infinitely_many_sizes holds when an infinite independent path exists and
/// some branching class recurs, i.e. lies on or below a cycle of reachable
/// classes. infinite_sizes_found lists the infinite sizes up to probe_bound.
FinitenessReport infinitely_many_sizes(const TreeGrammar& grammar, std::size_t probe_bound = 32);

struct PathProductReport {
  std::size_t n = 0;
  std::size_t contracted_contours = 0;
  mpz_class weighted_sum = 0;  // sum over contours of the contraction of the product of path lengths
  mpz_class direct_count = 0;  // contours of the tree itself
  bool equal = false;
};

/// Compares the length-weighted contour count of contract_independent_paths(tree)
/// with the direct contour count of `tree`, both for size n around the root.
/// Throws TruncationTooShallow when the tree is truncated above
/// depth_bound(profile, n).
PathProductReport verify_path_product_identity(const ExplicitTree& tree, std::size_t n,
                                               const std::optional<DepthProfile>& profile = {});

}  // namespace contour
