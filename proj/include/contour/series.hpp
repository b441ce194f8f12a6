#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "contour/tree.hpp"

namespace contour {

/// Truncated power series c_0 + c_1 X + ... + c_N X^N with exact integer
/// coefficients. Binary operations require equal truncation orders; nothing
/// resizes implicitly.
class IntSeries {
 public:
  explicit IntSeries(std::size_t order) : coeffs_(order + 1) {}
  IntSeries(std::size_t order, std::vector<mpz_class> coeffs);

  static IntSeries x(std::size_t order);  // the series X (0 when order is 0)

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const mpz_class& operator[](std::size_t k) const { return coeffs_.at(k); }
  mpz_class& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }

  IntSeries& operator+=(const IntSeries& other);
  IntSeries& operator-=(const IntSeries& other);

  friend IntSeries operator+(IntSeries a, const IntSeries& b) { return a += b; }
  friend IntSeries operator-(IntSeries a, const IntSeries& b) { return a -= b; }
  friend IntSeries operator*(const IntSeries& a, const IntSeries& b);
  friend bool operator==(const IntSeries&, const IntSeries&) = default;

 private:
  std::vector<mpz_class> coeffs_;
};

enum class SeriesOp { add, sub, mul };

IntSeries series_arith(const IntSeries& a, const IntSeries& b, SeriesOp op);

/// a^e by repeated squaring over truncated multiplication; e >= 1.
IntSeries series_pow(const IntSeries& a, unsigned e);

/// The unique f with f(0) = 0 and f = (X + f)^d up to X^order.
///
/// Works on u = (X + f)/X: [X^n] f = [X^(n-d)] u^d, and u^d is advanced with
/// the power recurrence m w_m = sum_k ((d+1)k - m) u_k w_(m-k), which only
/// needs coefficients of f below n.
IntSeries solve_dary_fixed_point(int d, std::size_t order);

/// [X^n](X + f) via Lagrange inversion with phi(X) = (1 - X^(d-1))^(-1):
/// binom(n+k-1, k)/n when k = (n-1)/(d-1) is integral, else 0.
mpz_class lagrange_dary_coefficient(int d, unsigned long n);

/// Solves f_t = prod_{c in children(t)} (X + f_c) for every class, order by
/// order. Throws InfiniteCoefficients when a cycle of one-child classes is
/// reachable (those coefficients are not finite).
std::vector<IntSeries> solve_grammar_system(const TreeGrammar& grammar, std::size_t order);

}  // namespace contour
