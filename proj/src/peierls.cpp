#include "contour/peierls.hpp"

#include "contour/error.hpp"

namespace contour {

WeightSpec WeightSpec::exp_beta(mpq_class beta) {
  if (sgn(beta) <= 0) throw PreconditionError("beta must be positive");
  return {ExpBeta{std::move(beta)}};
}

WeightSpec WeightSpec::activity(mpq_class lambda) {
  if (sgn(lambda) < 0) throw PreconditionError("activity must be non-negative");
  return {Activity{std::move(lambda)}};
}

Interval WeightSpec::lambda(mpfr_prec_t prec) const {
  if (const auto* a = std::get_if<Activity>(&kind))
    return {BigFloat::from_q(a->lambda, prec, MPFR_RNDD), BigFloat::from_q(a->lambda, prec, MPFR_RNDU)};

  const auto& beta = std::get<ExpBeta>(kind).beta;
  // exp is increasing, so round the exponent in the same direction
  Interval out{BigFloat(prec), BigFloat(prec)};
  mpq_class exponent = -2 * beta;
  mpfr_set_q(out.lower.get(), exponent.get_mpq_t(), MPFR_RNDD);
  mpfr_exp(out.lower.get(), out.lower.get(), MPFR_RNDD);
  mpfr_set_q(out.upper.get(), exponent.get_mpq_t(), MPFR_RNDU);
  mpfr_exp(out.upper.get(), out.upper.get(), MPFR_RNDU);
  return out;
}

namespace {

const ExtCount& count_at(const CountReport& counts, std::size_t n) {
  static const ExtCount zero(0L);
  if (n > counts.order)
    throw PreconditionError("counts cover sizes up to " + std::to_string(counts.order) +
                            ", asked for " + std::to_string(n));
  auto it = counts.counts.find(n);
  if (it == counts.counts.end()) return zero;
  if (it->second.is_infinite())
    throw InfiniteMultiplicity(n, "size " + std::to_string(n) +
                                      " has infinitely many contours; a size-only weight cannot be summed");
  return it->second;
}

}  // namespace

Interval peierls_partial_sum(const CountReport& counts, const WeightSpec& weight, std::size_t n_max,
                             unsigned precision_bits) {
  if (n_max == 0) throw PreconditionError("n_max must be at least 1");
  if (precision_bits < 64) throw PreconditionError("precision must be at least 64 bits");
  const auto prec = static_cast<mpfr_prec_t>(precision_bits);
  for (std::size_t n = 1; n <= n_max; ++n) count_at(counts, n);  // reject infinite sizes first

  auto lam = weight.lambda(prec);
  Interval sum{BigFloat(prec), BigFloat(prec)};
  BigFloat pow_lo(prec), pow_hi(prec), term(prec);
  mpfr_set_ui(pow_lo.get(), 1, MPFR_RNDD);
  mpfr_set_ui(pow_hi.get(), 1, MPFR_RNDU);
  for (std::size_t n = 1; n <= n_max; ++n) {
    mpfr_mul(pow_lo.get(), pow_lo.get(), lam.lower.get(), MPFR_RNDD);
    mpfr_mul(pow_hi.get(), pow_hi.get(), lam.upper.get(), MPFR_RNDU);
    const auto& c = count_at(counts, n).value();
    if (sgn(c) == 0) continue;
    mpfr_mul_z(term.get(), pow_lo.get(), c.get_mpz_t(), MPFR_RNDD);
    mpfr_add(sum.lower.get(), sum.lower.get(), term.get(), MPFR_RNDD);
    mpfr_mul_z(term.get(), pow_hi.get(), c.get_mpz_t(), MPFR_RNDU);
    mpfr_add(sum.upper.get(), sum.upper.get(), term.get(), MPFR_RNDU);
  }
  return sum;
}

std::optional<mpq_class> peierls_exact_sum(const CountReport& counts, const WeightSpec& weight,
                                           std::size_t n_max) {
  const auto* a = std::get_if<WeightSpec::Activity>(&weight.kind);
  if (!a) return std::nullopt;
  mpq_class sum = 0, power = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    power *= a->lambda;
    sum += power * mpq_class(count_at(counts, n).value());
  }
  sum.canonicalize();
  return sum;
}

double estimate_growth_rate(const CountReport& counts, std::size_t n_max) {
  std::vector<std::size_t> support;
  for (std::size_t n = 1; n <= n_max; ++n)
    if (!count_at(counts, n).is_zero()) support.push_back(n);
  if (support.size() < 10)
    throw PreconditionError("growth estimate needs at least 10 nonzero counts, found " +
                            std::to_string(support.size()));
  const std::size_t lo = support[support.size() - 2];
  const std::size_t hi = support.back();
  mpq_class ratio(count_at(counts, hi).value(), count_at(counts, lo).value());
  ratio.canonicalize();
  BigFloat r = BigFloat::from_q(ratio, 128, MPFR_RNDN);
  mpfr_rootn_ui(r.get(), r.get(), static_cast<unsigned long>(hi - lo), MPFR_RNDN);
  return r.to_double();
}

namespace {

BigFloat critical_activity(int d, unsigned precision_bits, bool round_up) {
  if (d < 2) throw PreconditionError("critical_activity_bound needs d >= 2");
  const auto prec = static_cast<mpfr_prec_t>(std::max(precision_bits, 64U));
  // lambda* = 1 / (e d)^(1/(d-1)); bound the denominator the other way
  const mpfr_rnd_t inner = round_up ? MPFR_RNDD : MPFR_RNDU;
  const mpfr_rnd_t outer = round_up ? MPFR_RNDU : MPFR_RNDD;
  BigFloat v(prec);
  mpfr_set_ui(v.get(), 1, inner);
  mpfr_exp(v.get(), v.get(), inner);
  mpfr_mul_ui(v.get(), v.get(), static_cast<unsigned long>(d), inner);
  mpfr_rootn_ui(v.get(), v.get(), static_cast<unsigned long>(d - 1), inner);
  mpfr_ui_div(v.get(), 1, v.get(), outer);
  return v;
}

}  // namespace

BigFloat critical_activity_bound(int d, unsigned precision_bits) {
  return critical_activity(d, precision_bits, false);
}

BigFloat critical_activity_upper(int d, unsigned precision_bits) {
  return critical_activity(d, precision_bits, true);
}

}  // namespace contour
