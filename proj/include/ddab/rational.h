// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_RATIONAL_H_
#define DDAB_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace ddab {

// Exact arbitrary-precision rational used for every asset quantity.
// Always kept in canonical form (reduced, positive denominator).
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  // Accepts "n/d", "n", or "-n/d". Throws InputError on malformed text or a
  // zero denominator.
  static Rational Parse(std::string_view text);

  // Always "num/den", e.g. "3/1", "0/1", "7/10". Parse(ToString()) is exact.
  std::string ToString() const;

  const mpq_class& value() const { return value_; }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;
  // Largest integer <= value; throws InputError if it does not fit.
  long Floor() const;
  double ToDouble() const { return value_.get_d(); }
  std::size_t Hash() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.ToString();
  }

 private:
  mpq_class value_{0};
};

}  // namespace ddab

template <>
struct std::hash<ddab::Rational> {
  std::size_t operator()(const ddab::Rational& r) const { return r.Hash(); }
};

#endif  // DDAB_RATIONAL_H_
