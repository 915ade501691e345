#ifndef INVERSIO_DEMOIVRE_APPROX_HPP
#define INVERSIO_DEMOIVRE_APPROX_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "inversio/exact_binomial.hpp"
#include "inversio/numeric.hpp"
#include "inversio/rational.hpp"

namespace inversio {

/// Terms t_k = B_{2k} / (2k (2k-1) n^(2k-1)), k = 1..K, of the log-factorial
/// correction series. Indices are 1-based.
struct SeriesExpansion {
  std::uint64_t n = 0;
  std::vector<Rational> terms;
  std::size_t min_abs_index = 0;
  /// Smallest k with |t_{k+1}| > |t_k|; empty when the computed terms never grow.
  std::optional<std::size_t> diverges_after;
};

struct ApproxComparison {
  double exact = 0.0;
  double approx = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  std::optional<Rational> exact_rational;
};

/// Even-index Bernoulli numbers B_0, B_2, ..., B_{2k}; exact.
std::vector<Rational> bernoulli_numbers_even(std::size_t k);

/// ln n! through (n + 1/2) ln n - n + ln(2 pi)/2 plus k_terms series terms.
double log_factorial(std::uint64_t n, std::size_t k_terms);
/// |ln n! - log_factorial(n, k_terms)| evaluated in 512-bit arithmetic.
double log_factorial_truncation_error(std::uint64_t n, std::size_t k_terms);

/// Throws DomainError for n = 0 or k_max < 2.
SeriesExpansion series_terms(std::uint64_t n, std::size_t k_max);

/// C(n, n/2) / 2^n against 2 / sqrt(2 pi n). Throws DomainError for odd n.
ApproxComparison middle_term_ratio(std::uint64_t n);

/// Normal approximation of deviation_prob. With the continuity correction the
/// normal law is integrated over [k_lo - 1/2, k_hi + 1/2] for the strict
/// interior lattice points; without it over [n(theta - eps), n(theta + eps)].
/// The exact side uses `oracle_mode` (defaulting to Exact for n <= 5000).
ApproxComparison normal_deviation_approx(const BinomialModel& model, const Rational& eps,
                                         bool continuity_correction = true,
                                         std::optional<NumericMode> oracle_mode = {});

/// Standard normal mass on [z1, z2] via erfc, tail-aware.
double normal_interval(double z1, double z2);

}  // namespace inversio

#endif  // INVERSIO_DEMOIVRE_APPROX_HPP
