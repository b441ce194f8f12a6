#include "contour/counters.hpp"

#include <cmath>

#include "contour/error.hpp"
#include "contour/structure.hpp"

namespace contour {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw PreconditionError(what);
}

IntSeries dary(int d, std::size_t order) { return solve_dary_fixed_point(d, std::max<std::size_t>(order, 1)); }

mpz_class at(const IntSeries& s, unsigned long n) { return n <= s.order() ? s[n] : mpz_class(0); }

// Drops classes that never occur in the tree, so unrelated one-child cycles
// cannot poison the system.
TreeGrammar reachable_part(const TreeGrammar& g) {
  auto keep = g.reachable_below_root();
  keep[g.root_class()] = true;
  std::vector<std::pair<std::string, std::vector<std::string>>> classes;
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    if (!keep[c]) continue;
    std::vector<std::string> kids;
    for (auto k : g.children(c)) kids.push_back(g.name(k));
    classes.emplace_back(g.name(c), std::move(kids));
  }
  return TreeGrammar(g.name(g.root_class()), std::move(classes));
}

}  // namespace

mpz_class count_dary(int d, unsigned long n) {
  require(d >= 2, "count_dary needs d >= 2");
  require(n >= 1, "count_dary needs n >= 1");
  const unsigned long step = static_cast<unsigned long>(d) - 1;
  if (n == 1 || (n - 1) % step != 0) return 0;
  const unsigned long k = (n - 1) / step;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(d) * k, k);
  mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), n);
  return b;
}

mpz_class count_regular(int degree, unsigned long n) {
  require(degree >= 3, "count_regular needs degree >= 3");
  require(n >= 1, "count_regular needs n >= 1");
  const int d = degree - 1;
  auto a = [&](unsigned long m) { return m == 0 ? mpz_class(0) : count_dary(d, m); };
  mpz_class b = a(n - 1);
  for (unsigned long k = 1; k + 1 <= n; ++k) b += a(k) * a(n - k);
  return b;
}

IntSeries regular_series(int degree, std::size_t order) {
  require(degree >= 3, "regular_series needs degree >= 3");
  auto f = dary(degree - 1, order);
  auto x = IntSeries::x(f.order());
  auto g = x * f + f * f;
  if (order < g.order()) return IntSeries(order, {g.coeffs().begin(), g.coeffs().begin() + static_cast<long>(order) + 1});
  return g;
}

IntSeries rooted_dary_series(int d, std::size_t order) {
  require(d >= 2, "rooted_dary_series needs d >= 2");
  auto f = dary(d, order);
  auto c = f - series_pow(f, static_cast<unsigned>(d));
  if (order < c.order()) return IntSeries(order, {c.coeffs().begin(), c.coeffs().begin() + static_cast<long>(order) + 1});
  return c;
}

IntSeries rooted_regular_series(int degree, std::size_t order) {
  require(degree >= 3, "rooted_regular_series needs degree >= 3");
  const std::size_t n = std::max<std::size_t>(order, 1);
  auto f = dary(degree - 1, n);
  auto x = IntSeries::x(n);
  auto r = x * f + f * f - series_pow(f, static_cast<unsigned>(degree));
  if (order < r.order()) return IntSeries(order, {r.coeffs().begin(), r.coeffs().begin() + static_cast<long>(order) + 1});
  return r;
}

mpz_class count_rooted_dary(int d, unsigned long n) {
  require(d >= 2, "count_rooted_dary needs d >= 2");
  require(n >= 1, "count_rooted_dary needs n >= 1");
  auto c = rooted_dary_series(d, n);
  if (n < static_cast<unsigned long>(d) && sgn(c[n]) != 0)
    throw MismatchError("rooted d-ary count must vanish below size d");
  return c[n];
}

mpz_class count_rooted_regular(int degree, unsigned long n) {
  require(degree >= 3, "count_rooted_regular needs degree >= 3");
  require(n >= 1, "count_rooted_regular needs n >= 1");
  auto r = rooted_regular_series(degree, n);
  if (n < static_cast<unsigned long>(degree) && sgn(r[n]) != 0)
    throw MismatchError("rooted regular count must vanish below the degree");
  return r[n];
}

DaryBounds bounds_dary(int d, unsigned long n, unsigned fraction_bits) {
  require(d >= 2, "bounds_dary needs d >= 2");
  require(n >= 2, "bounds_dary needs n >= 2");
  const unsigned long step = static_cast<unsigned long>(d) - 1;
  if ((n - 1) % step != 0)
    throw PreconditionError("bounds_dary needs n = 1 (mod d-1); got n=" + std::to_string(n) +
                            ", d=" + std::to_string(d));
  const unsigned long k = (n - 1) / step;

  DaryBounds out{0, BigFloat(64)};
  mpz_class dk;
  mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), k);
  out.lower = mpq_class(dk, n);
  out.lower.canonicalize();

  // integer part of (e d)^k needs about k log2(e d) bits
  const double int_bits = static_cast<double>(k) * std::log2(std::exp(1.0) * d) + 8;
  const auto prec = static_cast<mpfr_prec_t>(int_bits) + static_cast<mpfr_prec_t>(fraction_bits) + 8;
  BigFloat v(prec);
  mpfr_set_ui(v.get(), 1, MPFR_RNDU);
  mpfr_exp(v.get(), v.get(), MPFR_RNDU);
  mpfr_mul_ui(v.get(), v.get(), static_cast<unsigned long>(d), MPFR_RNDU);
  mpfr_pow_ui(v.get(), v.get(), k, MPFR_RNDU);
  mpfr_div_ui(v.get(), v.get(), n, MPFR_RNDU);
  out.upper = std::move(v);
  return out;
}

mpz_class bound_bollobas(unsigned long r, unsigned long n) {
  require(r >= 2, "bound_bollobas needs r >= 2");
  require(n >= 1, "bound_bollobas needs n >= 1");
  // negative floor arguments are clamped to 0 (binomial 1)
  const unsigned long m = n >= r ? (n - r) / (r - 1) : 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n + m, m);
  return b;
}

CountReport count_dary_report(int d, std::size_t n_max, bool rooted) {
  require(n_max >= 1, "n_max must be at least 1");
  CountReport r{"dary:" + std::to_string(d), rooted, n_max, {}};
  if (rooted) {
    auto s = rooted_dary_series(d, n_max);
    for (std::size_t n = 1; n <= n_max; ++n) r.counts[n] = ExtCount(s[n]);
  } else {
    for (std::size_t n = 1; n <= n_max; ++n) r.counts[n] = ExtCount(count_dary(d, n));
  }
  return r;
}

CountReport count_regular_report(int degree, std::size_t n_max, bool rooted) {
  require(n_max >= 1, "n_max must be at least 1");
  CountReport r{"regular:" + std::to_string(degree), rooted, n_max, {}};
  auto s = rooted ? rooted_regular_series(degree, n_max) : regular_series(degree, n_max);
  for (std::size_t n = 1; n <= n_max; ++n) r.counts[n] = ExtCount(at(s, n));
  return r;
}

CountReport count_grammar(const TreeGrammar& g, std::size_t n_max, bool rooted) {
  require(n_max >= 1, "n_max must be at least 1");
  CountReport r{"grammar:" + g.name(g.root_class()), rooted, n_max, {}};

  if (find_infinite_independent_path(g)) {
    auto m = contour_multiplicities(g, n_max, rooted);
    for (std::size_t n = 1; n <= n_max; ++n)
      if (m[n].is_infinite()) r.counts[n] = ExtCount::infinite();
    return r;
  }

  const auto reach = reachable_part(g);
  auto f = solve_grammar_system(reach, n_max);
  const auto x = IntSeries::x(n_max);
  IntSeries all(n_max), inside(n_max);
  all[0] = 1;
  inside[0] = 1;
  for (auto c : reach.children(reach.root_class())) {
    all = all * (x + f[c]);
    inside = inside * f[c];
  }
  // contours with a root edge = all contours minus those keeping every root edge
  IntSeries result = rooted ? all - inside : all;
  for (std::size_t n = 1; n <= n_max; ++n) r.counts[n] = ExtCount(result[n]);
  return r;
}

}  // namespace contour
