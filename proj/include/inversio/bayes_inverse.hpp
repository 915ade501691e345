#ifndef INVERSIO_BAYES_INVERSE_HPP
#define INVERSIO_BAYES_INVERSE_HPP

#include <cstdint>

#include "inversio/numeric.hpp"
#include "inversio/rational.hpp"

namespace inversio {

/// Beta(a, b) shape pair. The uniform prior is Beta(1, 1).
class BetaParams {
 public:
  BetaParams() = default;
  /// Throws DomainError unless a > 0 and b > 0 (finite).
  BetaParams(double a, double b);
  static BetaParams uniform() { return {}; }

  double a() const { return a_; }
  double b() const { return b_; }
  bool integer_shapes() const;

  friend bool operator==(const BetaParams&, const BetaParams&) = default;

 private:
  double a_ = 1.0;
  double b_ = 1.0;
};

struct ObservedCounts {
  std::uint64_t p = 0;  // successes
  std::uint64_t q = 0;  // failures

  std::uint64_t total() const { return p + q; }
  friend ObservedCounts operator+(ObservedCounts x, ObservedCounts y) {
    return {x.p + y.p, x.q + y.q};
  }
};

/// Limits l1 <= l2 inside [0, 1]. Open and closed intervals coincide.
class IntervalQuery {
 public:
  IntervalQuery(Rational l1, Rational l2);
  const Rational& l1() const { return l1_; }
  const Rational& l2() const { return l2_; }

 private:
  Rational l1_;
  Rational l2_;
};

/// Conjugate update (a + p, b + q).
BetaParams posterior(const BetaParams& prior, const ObservedCounts& data);

/// I(x; a, b) to ~1e-12 relative accuracy by continued fraction.
/// Throws NumericalError if the fraction does not converge.
double regularized_incomplete_beta(double x, double a, double b);

/// Lower and upper tails I(x; a, b) and 1 - I(x; a, b), each accurate in
/// its own right (the smaller one is never formed by subtraction).
struct BetaTails {
  double lower = 0.0;
  double upper = 0.0;
};
BetaTails incomplete_beta_tails(double x, double a, double b);

/// Exact I(x; a, b) for integer shapes, by integrating the binomially
/// expanded density and normalizing with the exact Beta function.
Rational incomplete_beta_exact(const Rational& x, std::uint64_t a, std::uint64_t b);

/// Posterior mass of theta on [l1, l2]. Exact mode requires integer
/// posterior shapes (UnsupportedError otherwise).
Probability posterior_interval_prob(const BetaParams& prior, const ObservedCounts& data,
                                    const IntervalQuery& query, NumericMode mode);

/// The ratio band [p/(p+q) - eps, p/(p+q) + eps] clipped to [0, 1].
IntervalQuery hartley_band(const ObservedCounts& data, const Rational& eps);

/// Posterior mass on hartley_band. Throws DomainError if p + q = 0 or eps <= 0.
Probability hartley_deviation(const BetaParams& prior, const ObservedCounts& data,
                              const Rational& eps,
                              NumericMode mode = NumericMode::floating());

}  // namespace inversio

#endif  // INVERSIO_BAYES_INVERSE_HPP
