#include "inversio/demoivre_approx.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "inversio/errors.hpp"
#include "special_functions.hpp"

namespace inversio {

namespace {

constexpr std::size_t kCachedPairs = 100;  // B_0 .. B_200
constexpr mpfr_prec_t kOraclePrecision = 512;

// Akiyama-Tanigawa; returns B_0..B_{2k} at even indices only.
std::vector<Rational> compute_bernoulli_even(std::size_t k) {
  const std::size_t top = 2 * k;
  std::vector<mpq_class> row(top + 1);
  std::vector<Rational> even;
  even.reserve(k + 1);
  for (std::size_t m = 0; m <= top; ++m) {
    row[m] = mpq_class(1, static_cast<unsigned long>(m + 1));
    for (std::size_t j = m; j >= 1; --j) {
      row[j - 1] = static_cast<unsigned long>(j) * (row[j - 1] - row[j]);
      row[j - 1].canonicalize();
    }
    if (m % 2 == 0) even.emplace_back(row[0]);
  }
  return even;
}

const std::vector<Rational>& bernoulli_cache() {
  static std::once_flag once;
  static std::vector<Rational> cache;
  std::call_once(once, [] { cache = compute_bernoulli_even(kCachedPairs); });
  return cache;
}

BigInt to_big(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

Rational series_term(const Rational& b2k, std::size_t k, std::uint64_t n) {
  const auto two_k = static_cast<long long>(2 * k);
  BigInt power;
  mpz_pow_ui(power.get_mpz_t(), to_big(n).get_mpz_t(), static_cast<unsigned long>(2 * k - 1));
  return b2k / (Rational(two_k * (two_k - 1)) * Rational(power, BigInt(1)));
}

class MpfrValue {
 public:
  MpfrValue() { mpfr_init2(v_, kOraclePrecision); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

std::vector<Rational> bernoulli_numbers_even(std::size_t k) {
  if (k <= kCachedPairs) {
    const auto& cache = bernoulli_cache();
    return {cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(k + 1)};
  }
  return compute_bernoulli_even(k);
}

SeriesExpansion series_terms(std::uint64_t n, std::size_t k_max) {
  if (n < 1) throw DomainError("series_terms needs n >= 1");
  if (k_max < 2) throw DomainError("series_terms needs k_max >= 2");
  const auto bernoulli = bernoulli_numbers_even(k_max);
  SeriesExpansion out;
  out.n = n;
  out.terms.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) out.terms.push_back(series_term(bernoulli[k], k, n));

  std::size_t best = 0;
  Rational best_abs = out.terms[0].abs();
  for (std::size_t i = 1; i < out.terms.size(); ++i) {
    if (const Rational a = out.terms[i].abs(); a < best_abs) {
      best_abs = a;
      best = i;
    }
  }
  out.min_abs_index = best + 1;
  for (std::size_t i = 0; i + 1 < out.terms.size(); ++i) {
    if (out.terms[i + 1].abs() > out.terms[i].abs()) {
      out.diverges_after = i + 1;
      break;
    }
  }
  return out;
}

double log_factorial(std::uint64_t n, std::size_t k_terms) {
  if (n < 1) throw DomainError("log_factorial needs n >= 1");
  const double nd = static_cast<double>(n);
  double value = (nd + 0.5) * std::log(nd) - nd + detail::kLnSqrt2Pi;
  if (k_terms == 0) return value;
  const auto bernoulli = bernoulli_numbers_even(k_terms);
  for (std::size_t k = 1; k <= k_terms; ++k) value += series_term(bernoulli[k], k, n).to_double();
  return value;
}

double log_factorial_truncation_error(std::uint64_t n, std::size_t k_terms) {
  if (n < 1) throw DomainError("log_factorial needs n >= 1");
  MpfrValue exact, approx, tmp, half_ln_2pi;
  BigInt factorial;
  mpz_fac_ui(factorial.get_mpz_t(), static_cast<unsigned long>(n));
  mpfr_set_z(exact.get(), factorial.get_mpz_t(), MPFR_RNDN);
  mpfr_log(exact.get(), exact.get(), MPFR_RNDN);

  mpfr_const_pi(half_ln_2pi.get(), MPFR_RNDN);
  mpfr_mul_ui(half_ln_2pi.get(), half_ln_2pi.get(), 2, MPFR_RNDN);
  mpfr_log(half_ln_2pi.get(), half_ln_2pi.get(), MPFR_RNDN);
  mpfr_div_ui(half_ln_2pi.get(), half_ln_2pi.get(), 2, MPFR_RNDN);

  mpfr_set_z(tmp.get(), to_big(n).get_mpz_t(), MPFR_RNDN);
  mpfr_log(approx.get(), tmp.get(), MPFR_RNDN);
  mpfr_mul_d(approx.get(), approx.get(), static_cast<double>(n) + 0.5, MPFR_RNDN);
  mpfr_sub(approx.get(), approx.get(), tmp.get(), MPFR_RNDN);
  mpfr_add(approx.get(), approx.get(), half_ln_2pi.get(), MPFR_RNDN);
  if (k_terms > 0) {
    const auto bernoulli = bernoulli_numbers_even(k_terms);
    for (std::size_t k = 1; k <= k_terms; ++k) {
      const Rational term = series_term(bernoulli[k], k, n);
      mpfr_set_q(tmp.get(), term.raw().get_mpq_t(), MPFR_RNDN);
      mpfr_add(approx.get(), approx.get(), tmp.get(), MPFR_RNDN);
    }
  }
  mpfr_sub(tmp.get(), exact.get(), approx.get(), MPFR_RNDN);
  mpfr_abs(tmp.get(), tmp.get(), MPFR_RNDN);
  return mpfr_get_d(tmp.get(), MPFR_RNDN);
}

ApproxComparison middle_term_ratio(std::uint64_t n) {
  if (n < 2 || n % 2 != 0) {
    throw DomainError("middle_term_ratio needs an even n >= 2, got " + std::to_string(n));
  }
  BigInt power_of_two;
  mpz_ui_pow_ui(power_of_two.get_mpz_t(), 2, static_cast<unsigned long>(n));
  ApproxComparison out;
  out.exact_rational = Rational(binomial_coefficient(n, n / 2), power_of_two);
  out.exact = out.exact_rational->to_double();
  out.approx = 2.0 / std::sqrt(2.0 * M_PI * static_cast<double>(n));
  out.abs_error = std::fabs(out.exact - out.approx);
  out.rel_error = out.abs_error / out.exact;
  return out;
}

double normal_interval(double z1, double z2) {
  if (z1 >= z2) return 0.0;
  const double s = M_SQRT1_2;
  if (z1 >= 0) return 0.5 * (std::erfc(z1 * s) - std::erfc(z2 * s));
  if (z2 <= 0) return 0.5 * (std::erfc(-z2 * s) - std::erfc(-z1 * s));
  return 1.0 - 0.5 * std::erfc(-z1 * s) - 0.5 * std::erfc(z2 * s);
}

ApproxComparison normal_deviation_approx(const BinomialModel& model, const Rational& eps,
                                         bool continuity_correction,
                                         std::optional<NumericMode> oracle_mode) {
  if (eps.sign() <= 0) throw DomainError("eps must be positive");
  if (model.theta().sign() == 0 || model.theta() == Rational(1)) {
    throw DomainError("normal approximation needs 0 < theta < 1");
  }
  const double n = static_cast<double>(model.n());
  const double theta = model.theta().to_double();
  const double mean = (Rational(static_cast<long long>(model.n())) * model.theta()).to_double();
  const double sigma = std::sqrt(n * theta * (1.0 - theta));

  ApproxComparison out;
  if (continuity_correction) {
    const auto band = deviation_band(model.n(), model.theta(), eps);
    out.approx = band ? normal_interval((static_cast<double>(band->first) - 0.5 - mean) / sigma,
                                        (static_cast<double>(band->second) + 0.5 - mean) / sigma)
                      : 0.0;
  } else {
    const double half_width = n * eps.to_double() / sigma;
    out.approx = normal_interval(-half_width, half_width);
  }
  const NumericMode mode =
      oracle_mode.value_or(model.n() <= 5000 ? NumericMode::exact() : NumericMode::floating());
  const Probability exact = deviation_prob(model, eps, mode);
  out.exact = exact.value;
  out.exact_rational = exact.exact;
  out.abs_error = std::fabs(out.exact - out.approx);
  out.rel_error = out.exact > 0 ? out.abs_error / out.exact
                                : (out.abs_error == 0 ? 0.0 : std::numeric_limits<double>::infinity());
  return out;
}

}  // namespace inversio
