#include "contour/series.hpp"

#include <string>

#include "contour/error.hpp"

namespace contour {

namespace {

void require_same_order(const IntSeries& a, const IntSeries& b) {
  if (a.order() != b.order())
    throw PreconditionError("series orders differ: " + std::to_string(a.order()) + " vs " +
                            std::to_string(b.order()));
}

}  // namespace

IntSeries::IntSeries(std::size_t order, std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != order + 1)
    throw PreconditionError("coefficient list length must be order + 1");
}

IntSeries IntSeries::x(std::size_t order) {
  IntSeries s(order);
  if (order >= 1) s.coeffs_[1] = 1;
  return s;
}

IntSeries& IntSeries::operator+=(const IntSeries& other) {
  require_same_order(*this, other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

IntSeries& IntSeries::operator-=(const IntSeries& other) {
  require_same_order(*this, other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

IntSeries operator*(const IntSeries& a, const IntSeries& b) {
  require_same_order(a, b);
  const std::size_t n = a.order();
  IntSeries out(n);
  // skip zero coefficients; the series here are sparse in low degrees
  for (std::size_t i = 0; i <= n; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      mpz_addmul(out.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return out;
}

IntSeries series_arith(const IntSeries& a, const IntSeries& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::add: return a + b;
    case SeriesOp::sub: return a - b;
    case SeriesOp::mul: return a * b;
  }
  throw PreconditionError("unknown series operation");
}

IntSeries series_pow(const IntSeries& a, unsigned e) {
  if (e == 0) throw PreconditionError("series_pow needs a positive exponent");
  IntSeries result = a;
  IntSeries base = a;
  --e;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

IntSeries solve_dary_fixed_point(int d, std::size_t order) {
  if (d < 2) throw PreconditionError("solve_dary_fixed_point needs d >= 2");
  if (order < 1) throw PreconditionError("solve_dary_fixed_point needs order >= 1");
  const auto dd = static_cast<long>(d);

  IntSeries f(order);
  // u = 1 + f_2 X + f_3 X^2 + ..., w = u^d
  std::vector<mpz_class> u(order + 1), w(order + 1);
  u[0] = 1;
  w[0] = 1;
  std::size_t w_known = 0;  // w[0..w_known] computed

  for (std::size_t n = 2; n <= order; ++n) {
    if (n < static_cast<std::size_t>(d)) continue;  // f_n = 0 below X^d
    const std::size_t m = n - static_cast<std::size_t>(d);
    while (w_known < m) {
      const std::size_t mm = ++w_known;
      mpz_class acc = 0;
      for (std::size_t k = 1; k <= mm; ++k) {
        if (sgn(u[k]) == 0) continue;
        mpz_class factor = (dd + 1) * static_cast<long>(k) - static_cast<long>(mm);
        acc += factor * u[k] * w[mm - k];
      }
      if (!mpz_divisible_ui_p(acc.get_mpz_t(), mm))
        throw MismatchError("power recurrence produced a non-integer coefficient");
      mpz_divexact_ui(w[mm].get_mpz_t(), acc.get_mpz_t(), mm);
    }
    f[n] = w[m];
    if (n - 1 <= order) u[n - 1] = f[n];
  }
  return f;
}

mpz_class lagrange_dary_coefficient(int d, unsigned long n) {
  if (d < 2) throw PreconditionError("lagrange_dary_coefficient needs d >= 2");
  if (n < 1) throw PreconditionError("lagrange_dary_coefficient needs n >= 1");
  const unsigned long step = static_cast<unsigned long>(d) - 1;
  if ((n - 1) % step != 0) return 0;
  const unsigned long k = (n - 1) / step;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n + k - 1, k);
  if (!mpz_divisible_ui_p(b.get_mpz_t(), n))
    throw MismatchError("binom(n+k-1, k) is not divisible by n for d=" + std::to_string(d) +
                        ", n=" + std::to_string(n));
  mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), n);
  return b;
}

std::vector<IntSeries> solve_grammar_system(const TreeGrammar& grammar, std::size_t order) {
  const std::size_t classes = grammar.num_classes();
  auto one_child = [&](std::size_t c) { return grammar.children(c).size() == 1; };

  // One-child classes read their child's coefficient of the same degree, so
  // they are evaluated after it. A cycle here is an infinite independent path.
  std::vector<std::size_t> chain_order;
  {
    std::vector<int> state(classes, 0);  // 0 new, 1 on stack, 2 done
    for (std::size_t start = 0; start < classes; ++start) {
      if (!one_child(start) || state[start] == 2) continue;
      std::vector<std::size_t> path;
      std::size_t c = start;
      while (one_child(c) && state[c] == 0) {
        state[c] = 1;
        path.push_back(c);
        c = grammar.children(c)[0];
      }
      if (one_child(c) && state[c] == 1)
        throw InfiniteCoefficients("class '" + grammar.name(c) +
                                   "' lies on a cycle of one-child classes; contour counts are infinite");
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        state[*it] = 2;
        chain_order.push_back(*it);
      }
    }
  }

  std::vector<IntSeries> f(classes, IntSeries(order));
  // prefix[t][j] = prod_{i<=j} (X + f_{c_i}) for classes with >= 2 children
  std::vector<std::vector<IntSeries>> prefix(classes);
  for (std::size_t t = 0; t < classes; ++t)
    if (!one_child(t)) prefix[t].assign(grammar.children(t).size(), IntSeries(order));

  auto h = [&](std::size_t c, std::size_t n) -> mpz_class {
    return n == 1 ? mpz_class(f[c][n] + 1) : f[c][n];
  };

  for (std::size_t n = 1; n <= order; ++n) {
    for (std::size_t t = 0; t < classes; ++t) {
      if (one_child(t)) continue;
      auto kids = grammar.children(t);
      for (std::size_t j = 1; j < kids.size(); ++j) {
        mpz_class acc = 0;
        const auto& prev = prefix[t][j - 1];
        for (std::size_t m = 1; m < n; ++m) {
          if (sgn(prev[m]) == 0) continue;
          acc += prev[m] * h(kids[j], n - m);
        }
        prefix[t][j][n] = acc;
      }
      f[t][n] = prefix[t].back()[n];
    }
    for (std::size_t t : chain_order) f[t][n] = h(grammar.children(t)[0], n);
    for (std::size_t t = 0; t < classes; ++t)
      if (!one_child(t)) prefix[t][0][n] = h(grammar.children(t)[0], n);
  }
  return f;
}

}  // namespace contour
