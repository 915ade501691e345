#include "inversio/exact_binomial.hpp"

#include <cmath>
#include <string>

#include "inversio/errors.hpp"
#include "special_functions.hpp"

namespace inversio {

namespace {

BigInt to_big(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

BigInt big_pow(const BigInt& base, std::uint64_t e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

void check_theta(const Rational& theta) {
  if (theta < Rational(0) || theta > Rational(1)) {
    throw DomainError("theta must lie in [0, 1], got " + theta.str());
  }
}

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("theta must lie in [0, 1]");
}

void check_range(std::uint64_t n, std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) {
    throw DomainError("empty count interval: lo=" + std::to_string(lo) + " > hi=" + std::to_string(hi));
  }
  if (hi > n) {
    throw DomainError("count " + std::to_string(hi) + " exceeds n=" + std::to_string(n));
  }
}

// Sum of C(n,k) u^k w^(n-k) over lo..hi, i.e. the numerator over v^n.
BigInt interval_numerator(std::uint64_t n, const BigInt& u, const BigInt& w, std::uint64_t lo,
                          std::uint64_t hi) {
  if (u == 0) return lo == 0 ? big_pow(w, n) : BigInt(0);
  if (w == 0) return hi == n ? big_pow(u, n) : BigInt(0);
  BigInt term = binomial_coefficient(n, lo) * big_pow(u, lo) * big_pow(w, n - lo);
  BigInt sum = term;
  for (std::uint64_t k = lo; k < hi; ++k) {
    // term_{k+1} * w = term_k * (n - k) * u / (k + 1) is an integer.
    term *= to_big(n - k);
    term *= u;
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), to_big(k + 1).get_mpz_t());
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), w.get_mpz_t());
    sum += term;
  }
  return sum;
}

Rational exact_interval(const BinomialModel& model, std::uint64_t lo, std::uint64_t hi) {
  const BigInt u = model.theta().num();
  const BigInt v = model.theta().den();
  const BigInt w = v - u;
  return Rational(interval_numerator(model.n(), u, w, lo, hi), big_pow(v, model.n()));
}

double float_interval(std::uint64_t n, double p, double q, std::uint64_t lo, std::uint64_t hi) {
  double sum = 0.0;
  for (std::uint64_t k = lo; k <= hi; ++k) sum += detail::binomial_pmf_saddle(n, k, p, q);
  return sum;
}

}  // namespace

BinomialModel::BinomialModel(std::uint64_t n, Rational theta) : n_(n), theta_(std::move(theta)) {
  if (n_ < 1) throw DomainError("binomial model needs n >= 1");
  check_theta(theta_);
}

BigInt binomial_coefficient(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c *= to_big(n - k + i);
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), to_big(i).get_mpz_t());
  }
  return c;
}

Probability pmf(const BinomialModel& model, std::uint64_t k, NumericMode mode) {
  check_range(model.n(), k, k);
  return interval_count_prob(model, k, k, mode);
}

Probability interval_count_prob(const BinomialModel& model, std::uint64_t lo, std::uint64_t hi,
                                NumericMode mode) {
  check_range(model.n(), lo, hi);
  if (mode.is_exact()) return Probability::from_exact(exact_interval(model, lo, hi));
  const double p = model.theta().to_double();
  const double q = (Rational(1) - model.theta()).to_double();
  return Probability::from_float(float_interval(model.n(), p, q, lo, hi));
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> deviation_band(std::uint64_t n,
                                                                      const Rational& theta,
                                                                      const Rational& eps) {
  if (eps.sign() <= 0) throw DomainError("eps must be positive, got " + eps.str());
  const Rational nn(to_big(n), BigInt(1));
  // k strictly between n(theta - eps) and n(theta + eps).
  BigInt lo = (nn * (theta - eps)).floor() + 1;
  BigInt hi = (nn * (theta + eps)).ceil() - 1;
  if (lo < 0) lo = 0;
  if (hi > to_big(n)) hi = to_big(n);
  if (lo > hi) return std::nullopt;
  return std::pair{static_cast<std::uint64_t>(lo.get_ui()), static_cast<std::uint64_t>(hi.get_ui())};
}

Probability deviation_prob(const BinomialModel& model, const Rational& eps, NumericMode mode) {
  const auto band = deviation_band(model.n(), model.theta(), eps);
  if (!band) {
    return mode.is_exact() ? Probability::from_exact(Rational(0)) : Probability::from_float(0.0);
  }
  return interval_count_prob(model, band->first, band->second, mode);
}

double log_pmf_float(std::uint64_t n, double theta, std::uint64_t k) {
  check_theta(theta);
  check_range(n, k, k);
  return detail::binomial_log_pmf_saddle(n, k, theta, 1.0 - theta);
}

double pmf_float(std::uint64_t n, double theta, std::uint64_t k) {
  return std::exp(log_pmf_float(n, theta, k));
}

double interval_count_prob_float(std::uint64_t n, double theta, std::uint64_t lo,
                                 std::uint64_t hi) {
  check_theta(theta);
  check_range(n, lo, hi);
  return float_interval(n, theta, 1.0 - theta, lo, hi);
}

double deviation_prob_float(std::uint64_t n, double theta, double eps) {
  check_theta(theta);
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const auto band = deviation_band(n, Rational::from_double(theta), Rational::from_double(eps));
  if (!band) return 0.0;
  return float_interval(n, theta, 1.0 - theta, band->first, band->second);
}

}  // namespace inversio
