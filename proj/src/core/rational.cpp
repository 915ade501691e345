#include "inversio/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include <mpfr.h>

#include "inversio/errors.hpp"

namespace inversio {

namespace {

constexpr long kMaxDecimalExponent = 100'000;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("malformed rational: '" + std::string(whole) + "'");
  BigInt value(std::string(s), 10);
  return negative ? BigInt(-value) : value;
}

BigInt pow10(unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  const auto fail = [&] { throw ParseError("malformed rational: '" + std::string(whole) + "'"); };
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 7) fail();
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  long fraction_digits = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) fail();
    if (!int_part.empty() && !all_digits(int_part)) fail();
    if (!frac_part.empty() && !all_digits(frac_part)) fail();
    digits = std::string(int_part) + std::string(frac_part);
    fraction_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) fail();
    digits = std::string(s);
  }
  const long scale = exponent - fraction_digits;
  if (scale > kMaxDecimalExponent || scale < -kMaxDecimalExponent) fail();
  BigInt mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  if (scale >= 0) return Rational(BigInt(mantissa * pow10(static_cast<unsigned long>(scale))), BigInt(1));
  return Rational(mantissa, pow10(static_cast<unsigned long>(-scale)));
}

}  // namespace

Rational::Rational(long long value) {
  // mpq_class has no long long constructor on every platform.
  value_ = mpq_class(BigInt(std::to_string(value), 10));
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(long long num, long long den)
    : Rational(BigInt(std::to_string(num), 10), BigInt(std::to_string(den), 10)) {}

Rational::Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("malformed rational: empty string");
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(trim(s.substr(0, slash)), text);
    const std::string_view den_text = trim(s.substr(slash + 1));
    if (!all_digits(den_text)) throw ParseError("malformed rational: '" + std::string(text) + "'");
    const BigInt den(std::string(den_text), 10);
    if (den == 0) throw ParseError("malformed rational: zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  return parse_decimal(s, text);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value has no rational form");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return Rational(q);
}

// mpq_get_d truncates; round to nearest through a 53-bit MPFR value instead.
double Rational::to_double() const {
  mpfr_t tmp;
  mpfr_init2(tmp, std::numeric_limits<double>::digits);
  mpfr_set_q(tmp, value_.get_mpq_t(), MPFR_RNDN);
  const double out = mpfr_get_d(tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return out;
}

double log_bigint(const BigInt& value) {
  if (value <= 0) throw DomainError("logarithm of a non-positive integer");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

double Rational::log() const {
  if (sign() <= 0) throw DomainError("logarithm of a non-positive rational");
  return log_bigint(value_.get_num()) - log_bigint(value_.get_den());
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

BigInt Rational::floor() const {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

BigInt Rational::ceil() const {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

Rational Rational::pow(unsigned long exponent) const {
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  return Rational(num, den);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

}  // namespace inversio
