#pragma once

#include <cstddef>
#include <map>
#include <string>

#include <gmpxx.h>

#include "contour/bigfloat.hpp"
#include "contour/ext_count.hpp"
#include "contour/series.hpp"
#include "contour/tree.hpp"

namespace contour {

/// Contour counts around the root, keyed by size.
struct CountReport {
  std::string family;  // "dary:d", "regular:k" or "grammar:<root class>"
  bool rooted = false;
  std::size_t order = 0;
  std::map<std::size_t, ExtCount> counts;
};

// a_n for T_d: 0 for n = 1 or n != 1 (mod d-1), else binom(d k, k)/n with
// k = (n-1)/(d-1).
mpz_class count_dary(int d, unsigned long n);

// b_n for the (d+1)-regular tree: a_{n-1} + sum_{k=1}^{n-1} a_k a_{n-k}, a_0 = 0.
mpz_class count_regular(int degree, unsigned long n);

// c_n: coefficient of f - f^d, f the d-ary solution.
mpz_class count_rooted_dary(int d, unsigned long n);

// d_n: b_n - [X^n] f^(d+1).
mpz_class count_rooted_regular(int degree, unsigned long n);

/// Generating series up to `order`, built on solve_dary_fixed_point.
IntSeries regular_series(int degree, std::size_t order);         // X f + f^2
IntSeries rooted_dary_series(int d, std::size_t order);          // f - f^d
IntSeries rooted_regular_series(int degree, std::size_t order);  // X f + f^2 - f^(d+1)

struct DaryBounds {
  mpq_class lower;  // d^k / n, exact
  BigFloat upper;   // (e d)^k / n, rounded up
};

/// Requires n >= 2 and n = 1 (mod d-1). The upper value carries at least
/// `fraction_bits` bits below the binary point.
DaryBounds bounds_dary(int d, unsigned long n, unsigned fraction_bits = 64);

/// binom(n + m, m) with m = floor((n-r)/(r-1)) clamped at 0.
mpz_class bound_bollobas(unsigned long r, unsigned long n);

CountReport count_dary_report(int d, std::size_t n_max, bool rooted = false);
CountReport count_regular_report(int degree, std::size_t n_max, bool rooted = false);

/// Exact counts from the class equations when the tree has no infinite
/// independent path. Otherwise only the infinite sizes are reported.
CountReport count_grammar(const TreeGrammar& grammar, std::size_t n_max, bool rooted = false);

}  // namespace contour
