#include "contour/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace contour {

mpq_class BigFloat::to_rational() const {
  mpz_class mant;
  mpfr_exp_t exp = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
  mpq_class q(mant);
  if (exp >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  q.canonicalize();
  return q;
}

std::string BigFloat::to_string(mpfr_rnd_t rnd, int digits) const {
  const char* fmt = rnd == MPFR_RNDU ? "%.*RUg" : rnd == MPFR_RNDD ? "%.*RDg" : "%.*RNg";
  int len = mpfr_snprintf(nullptr, 0, fmt, digits, v_);
  std::vector<char> buf(static_cast<std::size_t>(len) + 1);
  mpfr_snprintf(buf.data(), buf.size(), fmt, digits, v_);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

}  // namespace contour
