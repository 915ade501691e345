#ifndef INVERSIO_RATIONAL_HPP
#define INVERSIO_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace inversio {

using BigInt = mpz_class;

/// Exact fraction in lowest terms with a positive denominator.
///
/// Thin value type over GMP's mpq_class; every constructor canonicalizes so
/// that equality is value equality.
class Rational {
 public:
  Rational() = default;
  Rational(long long value);  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& q);

  /// Accepts "a/b", integers and decimal literals with an optional exponent
  /// ("3/5", "-2", "0.6", "1.5e-3"). Decimal input is converted exactly.
  static Rational parse(std::string_view text);
  /// Exact value of a finite binary double.
  static Rational from_double(double value);

  BigInt num() const { return value_.get_num(); }
  BigInt den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  double to_double() const;
  /// Natural logarithm of a positive value without overflow for huge
  /// numerators or denominators.
  double log() const;
  /// Always "num/den", including integers ("3/1").
  std::string str() const;

  BigInt floor() const;
  BigInt ceil() const;

  Rational pow(unsigned long exponent) const;
  Rational abs() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

/// Natural logarithm of a positive big integer.
double log_bigint(const BigInt& value);

}  // namespace inversio

#endif  // INVERSIO_RATIONAL_HPP
