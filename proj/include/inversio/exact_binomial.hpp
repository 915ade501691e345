#ifndef INVERSIO_EXACT_BINOMIAL_HPP
#define INVERSIO_EXACT_BINOMIAL_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "inversio/numeric.hpp"
#include "inversio/rational.hpp"

namespace inversio {

/// n independent trials with success probability theta.
class BinomialModel {
 public:
  /// Throws DomainError unless n >= 1 and 0 <= theta <= 1.
  BinomialModel(std::uint64_t n, Rational theta);

  std::uint64_t n() const { return n_; }
  const Rational& theta() const { return theta_; }

 private:
  std::uint64_t n_;
  Rational theta_;
};

/// C(n, k) by multiplicative accumulation.
BigInt binomial_coefficient(std::uint64_t n, std::uint64_t k);

Probability pmf(const BinomialModel& model, std::uint64_t k, NumericMode mode);
Probability interval_count_prob(const BinomialModel& model, std::uint64_t lo,
                                std::uint64_t hi, NumericMode mode);
/// P(theta - eps < k/n < theta + eps), strict on both sides.
Probability deviation_prob(const BinomialModel& model, const Rational& eps,
                           NumericMode mode);

/// Lattice points k with |k/n - theta| < eps, or nullopt when none exist.
std::optional<std::pair<std::uint64_t, std::uint64_t>> deviation_band(
    std::uint64_t n, const Rational& theta, const Rational& eps);

// Float-mode entry points taking binary inputs. Binary theta and eps are
// converted exactly to rationals where lattice decisions are needed.
double pmf_float(std::uint64_t n, double theta, std::uint64_t k);
double log_pmf_float(std::uint64_t n, double theta, std::uint64_t k);
double interval_count_prob_float(std::uint64_t n, double theta, std::uint64_t lo,
                                 std::uint64_t hi);
double deviation_prob_float(std::uint64_t n, double theta, double eps);

}  // namespace inversio

#endif  // INVERSIO_EXACT_BINOMIAL_HPP
