#include <doctest.h>

#include <random>

#include "contour/error.hpp"
#include "contour/series.hpp"
#include "helpers.hpp"

using namespace contour;

namespace {

IntSeries series(std::size_t order, std::vector<long> c) {
  std::vector<mpz_class> z;
  for (long v : c) z.emplace_back(v);
  z.resize(order + 1);
  return IntSeries(order, z);
}

// Plain iteration f <- (X + f)^d; each pass fixes one more coefficient.
IntSeries iterate_fixed_point(int d, std::size_t order) {
  IntSeries f(order);
  const auto x = IntSeries::x(order);
  for (std::size_t pass = 0; pass <= order; ++pass) f = series_pow(x + f, static_cast<unsigned>(d));
  return f;
}

IntSeries random_series(std::mt19937& rng, std::size_t order) {
  std::uniform_int_distribution<long> coef(-50, 50);
  IntSeries s(order);
  for (std::size_t k = 0; k <= order; ++k) s[k] = coef(rng);
  return s;
}

}  // namespace

TEST_CASE("series arithmetic") {
  auto one_x = series(2, {1, 1});
  CHECK(one_x * one_x == series(2, {1, 2, 1}));
  CHECK(IntSeries::x(1) * IntSeries::x(1) == series(1, {0, 0}));
  CHECK(series_pow(series(6, {0, 1, 1}), 3) == series(6, {0, 0, 0, 1, 3, 3, 1}));
  CHECK(series_arith(one_x, one_x, SeriesOp::add) == series(2, {2, 2}));
  CHECK(series_arith(one_x, one_x, SeriesOp::sub) == series(2, {0, 0}));
  CHECK(IntSeries::x(0) == series(0, {0}));
  CHECK_THROWS_AS(series(2, {1}) + series(3, {1}), PreconditionError);
  CHECK_THROWS_AS(series(2, {1}) * series(3, {1}), PreconditionError);
  CHECK_THROWS_AS(series_pow(one_x, 0), PreconditionError);
  CHECK_THROWS_AS(IntSeries(2, std::vector<mpz_class>(2)), PreconditionError);
}

TEST_CASE("series algebra laws on random inputs") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t order = 1 + trial % 12;
    auto a = random_series(rng, order), b = random_series(rng, order), c = random_series(rng, order);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == IntSeries(order));
    CHECK(series_pow(a, 3) == a * a * a);
  }
}

TEST_CASE("d-ary fixed point") {
  CHECK(solve_dary_fixed_point(2, 5) == series(5, {0, 0, 1, 2, 5, 14}));
  CHECK(solve_dary_fixed_point(3, 5) == series(5, {0, 0, 0, 1, 0, 3}));
  for (int d = 2; d <= 6; ++d) CHECK(solve_dary_fixed_point(d, 10)[1] == 0);
  CHECK_THROWS_AS(solve_dary_fixed_point(1, 5), PreconditionError);

  SUBCASE("agrees with plain iteration") {
    for (int d = 2; d <= 5; ++d) CHECK(solve_dary_fixed_point(d, 25) == iterate_fixed_point(d, 25));
  }
  SUBCASE("h = X + f satisfies h = X + h^d") {
    for (int d = 2; d <= 6; ++d) {
      const std::size_t N = 60;
      auto h = IntSeries::x(N) + solve_dary_fixed_point(d, N);
      CHECK(h == IntSeries::x(N) + series_pow(h, static_cast<unsigned>(d)));
    }
  }
}

TEST_CASE("Lagrange closed form") {
  CHECK(lagrange_dary_coefficient(2, 1) == 1);
  CHECK(lagrange_dary_coefficient(2, 5) == 14);
  CHECK(lagrange_dary_coefficient(3, 4) == 0);
  CHECK_THROWS_AS(lagrange_dary_coefficient(1, 3), PreconditionError);
  CHECK_THROWS_AS(lagrange_dary_coefficient(2, 0), PreconditionError);

  SUBCASE("equals the recurrence for d = 2..6, n <= 200") {
    for (int d = 2; d <= 6; ++d) {
      auto f = solve_dary_fixed_point(d, 200);
      for (unsigned long n = 1; n <= 200; ++n) {
        mpz_class h = f[n] + (n == 1 ? 1 : 0);
        CAPTURE(d);
        CAPTURE(n);
        REQUIRE(lagrange_dary_coefficient(d, n) == h);
      }
    }
  }
  SUBCASE("divisibility n | binom(n+k-1, k)") {
    for (int d = 2; d <= 6; ++d)
      for (unsigned long k = 0; k <= 60; ++k) {
        const unsigned long n = k * static_cast<unsigned long>(d - 1) + 1;
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), n + k - 1, k);
        CHECK(mpz_divisible_ui_p(b.get_mpz_t(), n) != 0);
      }
  }
}

TEST_CASE("grammar system") {
  using testing::grammar;
  SUBCASE("binary grammar equals the d-ary solver") {
    auto f = solve_grammar_system(TreeGrammar::dary(2), 5);
    CHECK(f[0] == series(5, {0, 0, 1, 2, 5, 14}));
  }
  SUBCASE("root with three binary subtrees") {
    auto g = grammar("R", {{"R", {"A", "A", "A"}}, {"A", {"A", "A"}}});
    auto f = solve_grammar_system(g, 4);
    CHECK(f[*g.find("R")] == series(4, {0, 0, 0, 1, 3}));
  }
  SUBCASE("infinite independent path") {
    CHECK_THROWS_AS(solve_grammar_system(testing::z_like(), 4), InfiniteCoefficients);
    CHECK_THROWS_AS(solve_grammar_system(testing::ray(), 4), InfiniteCoefficients);
  }
  SUBCASE("finite one-child chains are allowed") {
    // A -> B -> C -> [A, A]: the chain A, B, C has length 3
    auto g = grammar("A", {{"A", {"B"}}, {"B", {"C"}}, {"C", {"A", "A"}}});
    auto f = solve_grammar_system(g, 12);
    // cross-check against plain iteration of the same system
    const auto x = IntSeries::x(12);
    IntSeries a(12), b(12), c(12);
    for (int pass = 0; pass < 60; ++pass) {
      auto na = x + b, nb = x + c, nc = (x + a) * (x + a);
      a = na, b = nb, c = nc;
    }
    CHECK(f[*g.find("A")] == a);
    CHECK(f[*g.find("C")] == c);
  }
  SUBCASE("regular grammar") {
    auto f = solve_grammar_system(TreeGrammar::regular(4), 30);
    auto a = solve_dary_fixed_point(3, 30);
    const auto x = IntSeries::x(30);
    CHECK(f[*TreeGrammar::regular(4).find("A")] == a);
    CHECK(f[0] == (x + a) * (x + a) * (x + a) * (x + a));
  }
}
