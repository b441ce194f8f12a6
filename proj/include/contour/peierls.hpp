#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "contour/bigfloat.hpp"
#include "contour/counters.hpp"
#include "contour/error.hpp"

namespace contour {

/// Size-only contour weight w(n) = lambda^n, given either as a rational
/// activity or through beta with lambda = exp(-2 beta).
struct WeightSpec {
  struct ExpBeta {
    mpq_class beta;
  };
  struct Activity {
    mpq_class lambda;
  };
  std::variant<ExpBeta, Activity> kind;

  static WeightSpec exp_beta(mpq_class beta);
  static WeightSpec activity(mpq_class lambda);

  /// Rigorous enclosure of lambda at the given precision.
  Interval lambda(mpfr_prec_t precision) const;
};

/// InfiniteMultiplicity: a size with infinitely many contours was summed
/// against a size-only weight.
struct InfiniteMultiplicity : Error {
  InfiniteMultiplicity(std::size_t size_, const std::string& w)
      : Error(ErrorKind::infinite, w), size(size_) {}
  std::size_t size;
};

/// Enclosure of sum_{n <= n_max} w(n) counts[n] with directed rounding.
Interval peierls_partial_sum(const CountReport& counts, const WeightSpec& weight, std::size_t n_max,
                             unsigned precision_bits = 128);

/// Exact value of the same sum when the weight is a rational activity.
std::optional<mpq_class> peierls_exact_sum(const CountReport& counts, const WeightSpec& weight,
                                           std::size_t n_max);

/// Per-step geometric growth of the nonzero counts: with s the spacing of the
/// last two nonzero sizes m < m + s, returns (a_{m+s} / a_m)^(1/s). Needs at
/// least ten nonzero counts up to n_max.
double estimate_growth_rate(const CountReport& counts, std::size_t n_max);

/// (e d)^(-1/(d-1)) rounded down: for lambda below it, the upper bound
/// (1/n)(e d)^k on the d-ary counts makes sum_n a_n lambda^n converge.
BigFloat critical_activity_bound(int d, unsigned precision_bits = 128);

/// Same quantity rounded up, for certifying strict inequalities.
BigFloat critical_activity_upper(int d, unsigned precision_bits = 128);

}  // namespace contour
