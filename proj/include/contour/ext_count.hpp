#pragma once

#include <string>

#include <gmpxx.h>

namespace contour {

/// A contour multiplicity: an exact non-negative integer or infinity.
/// Arithmetic is the usual extension with 0 * infinity = 0.
class ExtCount {
 public:
  ExtCount() = default;
  ExtCount(mpz_class v) : value_(std::move(v)) {}  // NOLINT: implicit by intent
  ExtCount(long v) : value_(v) {}                  // NOLINT

  static ExtCount infinite() {
    ExtCount c;
    c.infinite_ = true;
    return c;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  bool is_zero() const noexcept { return !infinite_ && sgn(value_) == 0; }
  const mpz_class& value() const { return value_; }

  /// Decimal digits, or the literal "infinite".
  std::string to_string() const { return infinite_ ? "infinite" : value_.get_str(); }

  friend ExtCount operator+(const ExtCount& a, const ExtCount& b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return ExtCount(mpz_class(a.value_ + b.value_));
  }
  friend ExtCount operator*(const ExtCount& a, const ExtCount& b) {
    if (a.is_zero() || b.is_zero()) return ExtCount(0L);
    if (a.infinite_ || b.infinite_) return infinite();
    return ExtCount(mpz_class(a.value_ * b.value_));
  }
  friend bool operator==(const ExtCount& a, const ExtCount& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  bool infinite_ = false;
  mpz_class value_ = 0;
};

}  // namespace contour
