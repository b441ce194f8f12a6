#include <doctest.h>

#include <algorithm>
#include <random>

#include "contour/counters.hpp"
#include "contour/enumerate.hpp"
#include "contour/error.hpp"
#include "contour/structure.hpp"
#include "helpers.hpp"

using namespace contour;
using testing::grammar;

namespace {

// Grammars with and without infinite independent paths.
std::vector<std::pair<TreeGrammar, bool>> path_corpus() {
  return {
      {TreeGrammar::dary(2), false},
      {TreeGrammar::regular(3), false},
      {testing::z_like(), true},
      {testing::ray(), true},
      {testing::comb(), true},
      {grammar("R", {{"R", {"A"}}, {"A", {"B", "B"}}, {"B", {"A"}}}), false},
      {grammar("A", {{"A", {"B"}}, {"B", {"C"}}, {"C", {"A", "A"}}}), false},
      {grammar("R", {{"R", {"A", "A"}}, {"A", {"P", "P"}}, {"P", {"P"}}}), true},
      {grammar("R", {{"R", {"A", "A"}}, {"A", {"A", "B"}}, {"B", {"P", "P"}}, {"P", {"P"}}}), true},
      {grammar("R", {{"R", {"X", "Y"}}, {"X", {"Y"}}, {"Y", {"X", "X"}}}), false},
      {grammar("R", {{"R", {"U", "V", "W"}}, {"U", {"U", "U"}}, {"V", {"W"}}, {"W", {"V"}}}), true},
      {grammar("S", {{"S", {"S", "S", "T"}}, {"T", {"S"}}}), false},
      // unreachable one-child cycle does not matter
      {grammar("A", {{"A", {"A", "A"}}, {"Z", {"Z"}}}), false},
  };
}

std::map<std::size_t, std::size_t> truncation_counts(const TreeGrammar& g, std::size_t depth, std::size_t n_max) {
  EnumerateOptions opt;
  opt.check_depth = false;
  auto t = expand_grammar(g, depth);
  auto c = count_contours(t, t.root(), n_max, opt);
  for (std::size_t n = 1; n <= n_max; ++n) c.try_emplace(n, 0);
  return c;
}

ExplicitTree subdivided_random(std::mt19937& rng, std::size_t depth, const std::vector<int>& counts,
                               std::size_t min_len, std::size_t max_len) {
  auto base = testing::random_tree(rng, depth, counts);
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  ContractedTree ct{base, std::vector<std::size_t>(base.size(), 0)};
  for (VertexId v = 1; v < base.size(); ++v) ct.edge_length[v] = len(rng);
  return subdivide(ct);
}

}  // namespace

TEST_CASE("find_infinite_independent_path") {
  CHECK_FALSE(find_infinite_independent_path(TreeGrammar::dary(2)));
  auto w = find_infinite_independent_path(testing::z_like());
  REQUIRE(w);
  CHECK(w->class_cycle == std::vector<std::string>{"P"});
  CHECK(w->entry_path.front() == "R");
  CHECK(w->entry_path.back() == "P");
  CHECK_FALSE(find_infinite_independent_path(grammar("R", {{"R", {"A"}}, {"A", {"B", "B"}}, {"B", {"A"}}})));
  auto cyc = find_infinite_independent_path(
      grammar("R", {{"R", {"U", "V", "W"}}, {"U", {"U", "U"}}, {"V", {"W"}}, {"W", {"V"}}}));
  REQUIRE(cyc);
  CHECK(cyc->class_cycle.size() == 2);
  for (const auto& [g, has] : path_corpus()) CHECK(find_infinite_independent_path(g).has_value() == has);
}

TEST_CASE("classify_size") {
  CHECK(classify_size(testing::z_like(), 2).is_infinite());
  CHECK(classify_size(testing::z_like(), 3) == ExtCount(0L));
  CHECK(classify_size(testing::z_like(), 1) == ExtCount(0L));
  CHECK(classify_size(testing::ray(), 1).is_infinite());
  CHECK(classify_size(testing::ray(), 2) == ExtCount(0L));
  for (unsigned long n = 1; n <= 15; ++n) CHECK(classify_size(TreeGrammar::dary(2), n) == ExtCount(count_dary(2, n)));
  CHECK_THROWS_AS(classify_size(TreeGrammar::dary(2), 0), PreconditionError);
}

TEST_CASE("infinite sizes exist exactly when an infinite path exists") {
  for (const auto& [g, has] : path_corpus()) {
    auto m = contour_multiplicities(g, 30);
    bool any = std::any_of(m.begin(), m.end(), [](const ExtCount& c) { return c.is_infinite(); });
    CHECK(any == has);
    auto rep = infinitely_many_sizes(g, 30);
    CHECK(rep.has_infinite_path == has);
    CHECK(rep.witness.has_value() == has);
    if (rep.infinitely_many_sizes) CHECK(rep.has_infinite_path);
    CHECK(rep.probe_bound == 30);
    std::vector<std::size_t> inf;
    for (std::size_t n = 1; n <= 30; ++n)
      if (m[n].is_infinite()) inf.push_back(n);
    CHECK(rep.infinite_sizes_found == inf);
  }
}

TEST_CASE("multiplicities agree with the series counts on finite grammars") {
  for (const auto& [g, has] : path_corpus()) {
    if (has) continue;
    auto m = contour_multiplicities(g, 25);
    auto r = count_grammar(g, 25);
    auto mr = contour_multiplicities(g, 25, true);
    auto rr = count_grammar(g, 25, true);
    for (std::size_t n = 1; n <= 25; ++n) {
      CHECK(m[n] == r.counts.at(n));
      CHECK(mr[n] == rr.counts.at(n));
    }
  }
}

TEST_CASE("finite and infinite sizes against growing truncations") {
  SUBCASE("z-like: size 2 has D^2 contours at depth D") {
    for (std::size_t D = 2; D <= 7; ++D) {
      auto c = truncation_counts(testing::z_like(), D, 4);
      CHECK(c[2] == D * D);
      CHECK(c[1] == 0);
      CHECK(c[3] == 0);
      CHECK(c[4] == 0);
    }
  }
  SUBCASE("ray: size 1 has D contours") {
    for (std::size_t D = 2; D <= 7; ++D) CHECK(truncation_counts(testing::ray(), D, 3)[1] == D);
  }
  SUBCASE("mixed grammars: finite sizes are stable, infinite ones grow") {
    for (const auto& [g, has] : path_corpus()) {
      if (!has) continue;
      const std::size_t n_max = 6;
      auto m = contour_multiplicities(g, n_max);
      // keep the truncations small for wide grammars
      auto t = expand_grammar(g, 8);
      if (t.size() > 20000) continue;
      auto a = truncation_counts(g, 8, n_max);
      auto b = truncation_counts(g, 10, n_max);
      for (std::size_t n = 1; n <= n_max; ++n) {
        CAPTURE(n);
        if (m[n].is_infinite()) {
          CHECK(b[n] > a[n]);
        } else {
          CHECK(a[n] == b[n]);
          CHECK(ExtCount(mpz_class(a[n])) == m[n]);
        }
      }
    }
  }
}

TEST_CASE("infinitely_many_sizes") {
  auto comb = infinitely_many_sizes(testing::comb());
  CHECK(comb.infinitely_many_sizes);
  CHECK(comb.has_infinite_path);
  CHECK(comb.infinite_sizes_found.size() >= 10);

  auto ray = infinitely_many_sizes(testing::ray());
  CHECK_FALSE(ray.infinitely_many_sizes);
  CHECK(ray.infinite_sizes_found == std::vector<std::size_t>{1});

  auto bin = infinitely_many_sizes(TreeGrammar::dary(2));
  CHECK_FALSE(bin.infinitely_many_sizes);
  CHECK_FALSE(bin.has_infinite_path);
  CHECK(bin.infinite_sizes_found.empty());

  auto z = infinitely_many_sizes(testing::z_like());
  CHECK(z.infinite_sizes_found == std::vector<std::size_t>{2});
  CHECK_FALSE(z.infinitely_many_sizes);

  SUBCASE("no recurring branching class: large sizes are empty") {
    auto g = grammar("R", {{"R", {"A", "A"}}, {"A", {"P", "P"}}, {"P", {"P"}}});
    auto rep = infinitely_many_sizes(g);
    CHECK_FALSE(rep.infinitely_many_sizes);
    CHECK(rep.infinite_sizes_found == std::vector<std::size_t>{3, 4});
    for (std::size_t n = 5; n <= 40; ++n) CHECK(classify_size(g, n) == ExtCount(0L));
  }
  SUBCASE("recurring branching class above rays") {
    auto g = grammar("R", {{"R", {"A", "A"}}, {"A", {"A", "B"}}, {"B", {"P", "P"}}, {"P", {"P"}}});
    CHECK(infinitely_many_sizes(g).infinitely_many_sizes);
  }
}

TEST_CASE("path product identity") {
  auto base = expand_grammar(TreeGrammar::dary(2), 8);
  ContractedTree ct{base, std::vector<std::size_t>(base.size(), 2)};
  ct.edge_length[0] = 0;
  auto sub = subdivide(ct);

  auto r2 = verify_path_product_identity(sub, 2);
  CHECK(r2.weighted_sum == 4);
  CHECK(r2.direct_count == 4);
  CHECK(r2.contracted_contours == 1);
  CHECK(r2.equal);
  auto r3 = verify_path_product_identity(sub, 3);
  CHECK(r3.weighted_sum == 16);
  CHECK(r3.direct_count == 16);
  CHECK(r3.equal);

  SUBCASE("no degree-two vertices") {
    auto t = expand_grammar(TreeGrammar::dary(3), 6);
    for (std::size_t n = 1; n <= 7; ++n) {
      auto r = verify_path_product_identity(t, n);
      CHECK(r.equal);
      CHECK(r.weighted_sum == mpz_class(r.contracted_contours));
    }
  }
  SUBCASE("random subdivided trees") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 6; ++trial) {
      auto t = subdivided_random(rng, 7, {2, 3}, 2, 3);
      for (std::size_t n = 1; n <= 5; ++n) {
        auto r = verify_path_product_identity(t, n);
        CAPTURE(trial);
        CAPTURE(n);
        CHECK(r.equal);
      }
    }
  }
  SUBCASE("too shallow") {
    auto t = expand_grammar(TreeGrammar::dary(2), 3);
    CHECK_THROWS_AS(verify_path_product_identity(t, 6), TruncationTooShallow);
  }
}

TEST_CASE("edge swap along an independent path keeps a contour") {
  auto base = expand_grammar(TreeGrammar::dary(2), 6);
  ContractedTree ct{base, std::vector<std::size_t>(base.size(), 3)};
  ct.edge_length[0] = 0;
  auto t = subdivide(ct);
  auto c = contract_independent_paths(t);
  // edges of t grouped by the contracted edge they belong to
  std::map<EdgeId, std::vector<EdgeId>> path_edges;
  for (VertexId e = 0; e < t.size(); ++e)
    if (e != t.root()) path_edges[c.map.edge_map[e]].push_back(e);

  auto all = enumerate_contours(t, 0, 4);
  std::size_t swaps = 0;
  for (const auto& [n, group] : all)
    for (const auto& contour : group)
      for (auto e : contour.edges)
        for (auto other : path_edges[c.map.edge_map[e]]) {
          if (other == e) continue;
          auto edges = contour.edges;
          std::replace(edges.begin(), edges.end(), e, other);
          CHECK(is_contour(t, edges));
          ++swaps;
        }
  CHECK(swaps > 0);
}
