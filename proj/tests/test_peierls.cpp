#include <doctest.h>

#include <cmath>

#include "contour/counters.hpp"
#include "contour/error.hpp"
#include "contour/peierls.hpp"
#include "helpers.hpp"

using namespace contour;

TEST_CASE("partial sums") {
  auto bin = count_dary_report(2, 40);

  SUBCASE("binary, lambda = 1/8, n_max = 3") {
    // a_2 = 1, a_3 = 2: 1/64 + 2/512 = 5/256
    auto w = WeightSpec::activity(mpq_class(1, 8));
    auto s = peierls_partial_sum(bin, w, 3);
    CHECK(s.contains(mpq_class(5, 256)));
    CHECK_FALSE(s.contains(mpq_class(9, 512)));
    CHECK(compare(s.lower, s.upper) <= 0);
    auto exact = peierls_exact_sum(bin, w, 3);
    REQUIRE(exact);
    CHECK(*exact == mpq_class(1, 64) + mpq_class(2, 512));
  }
  SUBCASE("zero activity") {
    auto s = peierls_partial_sum(bin, WeightSpec::activity(0), 30);
    CHECK(s.contains(0));
    CHECK(compare(s.upper, mpz_class(0)) == 0);
  }
  SUBCASE("exp(-2 beta) weight") {
    auto w = WeightSpec::exp_beta(1);
    auto lam = w.lambda(128);
    const double e2 = std::exp(-2.0);
    CHECK(lam.lower.to_double() <= e2 * (1 + 1e-15));
    CHECK(lam.upper.to_double() >= e2 * (1 - 1e-15));
    CHECK(compare(lam.lower, lam.upper) < 0);
    CHECK_FALSE(peierls_exact_sum(bin, w, 5).has_value());
    // partial sum encloses the double-precision estimate
    auto s = peierls_partial_sum(bin, w, 10);
    double approx = 0;
    for (unsigned long n = 1; n <= 10; ++n) approx += count_dary(2, n).get_d() * std::pow(e2, double(n));
    CHECK(s.lower.to_double() <= approx * (1 + 1e-12));
    CHECK(s.upper.to_double() >= approx * (1 - 1e-12));
  }
  SUBCASE("infinite multiplicity") {
    CountReport z{"grammar:R", false, 3, {{2, ExtCount::infinite()}}};
    try {
      peierls_partial_sum(z, WeightSpec::activity(mpq_class(1, 10)), 3);
      FAIL("expected InfiniteMultiplicity");
    } catch (const InfiniteMultiplicity& e) {
      CHECK(e.size == 2);
      CHECK(e.kind() == ErrorKind::infinite);
    }
    auto zg = count_grammar(testing::z_like(), 3);
    CHECK_THROWS_AS(peierls_partial_sum(zg, WeightSpec::activity(mpq_class(1, 10)), 3), InfiniteMultiplicity);
  }
  SUBCASE("argument checks") {
    auto w = WeightSpec::activity(mpq_class(1, 8));
    CHECK_THROWS_AS(peierls_partial_sum(bin, w, 0), PreconditionError);
    CHECK_THROWS_AS(peierls_partial_sum(bin, w, 41), PreconditionError);
    CHECK_THROWS_AS(peierls_partial_sum(bin, w, 3, 32), PreconditionError);
    CHECK_THROWS_AS(WeightSpec::activity(-1), PreconditionError);
    CHECK_THROWS_AS(WeightSpec::exp_beta(0), PreconditionError);
  }
  SUBCASE("monotone in n_max and nested in precision") {
    auto w = WeightSpec::activity(mpq_class(1, 5));
    for (std::size_t n = 1; n < 40; ++n) {
      auto a = peierls_partial_sum(bin, w, n), b = peierls_partial_sum(bin, w, n + 1);
      CHECK(compare(a.lower, b.lower) <= 0);
      CHECK(compare(a.upper, b.upper) <= 0);
      auto hi = peierls_partial_sum(bin, w, n, 512);
      CHECK(hi.within(a));
      CHECK(hi.contains(*peierls_exact_sum(bin, w, n)));
    }
    auto wb = WeightSpec::exp_beta(mpq_class(3, 2));
    for (std::size_t n = 1; n <= 40; n += 3) {
      auto lo = peierls_partial_sum(bin, wb, n, 64);
      auto hi = peierls_partial_sum(bin, wb, n, 300);
      CHECK(hi.within(lo));
    }
  }
}

TEST_CASE("geometric tail below the critical activity") {
  // For d = 2 and lambda < 1/(2e): a_n lambda^n <= lambda q^(n-1) / n with
  // q = 2 e lambda, so sum_{n=N}^{2N} <= lambda q^(N-1) / (1 - q).
  const mpq_class lambda(1, 8);
  auto crit = critical_activity_bound(2);
  CHECK(compare(crit, lambda) > 0);
  const double q = 2 * std::exp(1.0) * lambda.get_d();
  for (unsigned long N = 2; N <= 200; N += 9) {
    mpq_class tail = 0, power = 1;
    for (unsigned long n = 1; n <= 2 * N; ++n) {
      power *= lambda;
      if (n >= N) tail += power * mpq_class(count_dary(2, n));
    }
    const double bound = lambda.get_d() * std::pow(q, double(N - 1)) / (1 - q);
    CHECK(tail.get_d() <= bound);
  }
}

TEST_CASE("growth rate") {
  SUBCASE("binary counts approach 4") {
    auto r = count_dary_report(2, 500);
    CHECK(std::abs(estimate_growth_rate(r, 500) - 4.0) < 0.04);
  }
  SUBCASE("ternary per-step growth squared approaches 27/4") {
    auto r = count_dary_report(3, 501);
    const double g = estimate_growth_rate(r, 501);
    CHECK(std::abs(g * g - 6.75) < 0.0675);
  }
  SUBCASE("too few nonzero counts") {
    CountReport zeros{"x", false, 30, {}};
    for (std::size_t n = 1; n <= 30; ++n) zeros.counts[n] = ExtCount(0L);
    CHECK_THROWS_AS(estimate_growth_rate(zeros, 30), PreconditionError);
    CHECK_THROWS_AS(estimate_growth_rate(count_dary_report(2, 8), 8), PreconditionError);
  }
}

TEST_CASE("critical activity") {
  auto lo2 = critical_activity_bound(2), hi2 = critical_activity_upper(2);
  CHECK(compare(lo2, hi2) <= 0);
  CHECK(lo2.to_double() == doctest::Approx(1 / (2 * std::exp(1.0))).epsilon(1e-12));
  CHECK(compare(hi2, mpq_class(1, 4)) < 0);  // below the true radius 1/4
  auto lo3 = critical_activity_bound(3);
  CHECK(lo3.to_double() == doctest::Approx(1 / std::sqrt(3 * std::exp(1.0))).epsilon(1e-12));
  // per-step radius for d = 3 is (4/27)^(1/2) > 0.3849
  CHECK(compare(critical_activity_upper(3), mpq_class(3849, 10000)) < 0);
  CHECK_THROWS_AS(critical_activity_bound(1), PreconditionError);
  // upper and lower straddle the true value tightly
  mpq_class diff = hi2.to_rational() - lo2.to_rational();
  CHECK(diff >= 0);
  CHECK(diff < mpq_class(1, 1000000000));
}
