#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace contour {

/// Owning MPFR value. Every operation takes an explicit rounding direction so
/// enclosures stay rigorous.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 128) { mpfr_init2(v_, precision); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_z(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat b(prec);
    mpfr_set_z(b.v_, z.get_mpz_t(), rnd);
    return b;
  }
  static BigFloat from_q(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat b(prec);
    mpfr_set_q(b.v_, q.get_mpq_t(), rnd);
    return b;
  }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

  /// Exact value as a fraction (MPFR numbers are dyadic rationals).
  mpq_class to_rational() const;

  /// Decimal string with `digits` significant digits rounded in direction rnd.
  std::string to_string(mpfr_rnd_t rnd, int digits = 30) const;

  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend int compare(const BigFloat& a, const mpz_class& z) { return mpfr_cmp_z(a.v_, z.get_mpz_t()); }
  friend int compare(const BigFloat& a, const mpq_class& q) { return mpfr_cmp_q(a.v_, q.get_mpq_t()); }

 private:
  mpfr_t v_;
};

/// Closed interval [lower, upper] with outward-rounded endpoints.
struct Interval {
  BigFloat lower;
  BigFloat upper;

  bool contains(const mpq_class& q) const { return compare(lower, q) <= 0 && compare(upper, q) >= 0; }
  bool within(const Interval& outer) const {
    return compare(outer.lower, lower) <= 0 && compare(upper, outer.upper) <= 0;
  }
};

}  // namespace contour
