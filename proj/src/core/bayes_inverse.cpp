#include "inversio/bayes_inverse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "inversio/errors.hpp"
#include "inversio/exact_binomial.hpp"
#include "special_functions.hpp"

namespace inversio {

namespace {

constexpr int kMaxIterations = 100'000;
constexpr double kConvergence = 1e-15;
constexpr double kTiny = 1e-300;
constexpr double kMaxExactShape = 9007199254740992.0;  // 2^53

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x, double front) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double md = m;
    const double m2 = 2.0 * md;
    double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kConvergence) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge", front * h / a);
}

void check_shapes(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("Beta shapes must be positive and finite");
  }
}

std::uint64_t as_count(double shape) { return static_cast<std::uint64_t>(shape); }

}  // namespace

BetaParams::BetaParams(double a, double b) : a_(a), b_(b) { check_shapes(a, b); }

bool BetaParams::integer_shapes() const {
  return a_ == std::floor(a_) && b_ == std::floor(b_) && a_ <= kMaxExactShape &&
         b_ <= kMaxExactShape;
}

IntervalQuery::IntervalQuery(Rational l1, Rational l2) : l1_(std::move(l1)), l2_(std::move(l2)) {
  if (l1_ < Rational(0) || l2_ > Rational(1) || l1_ > l2_) {
    throw DomainError("interval limits must satisfy 0 <= l1 <= l2 <= 1 (got [" + l1_.str() + ", " +
                      l2_.str() + "])");
  }
}

BetaParams posterior(const BetaParams& prior, const ObservedCounts& data) {
  return BetaParams(prior.a() + static_cast<double>(data.p), prior.b() + static_cast<double>(data.q));
}

BetaTails incomplete_beta_tails(double x, double a, double b) {
  check_shapes(a, b);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete beta needs 0 <= x <= 1");
  if (x == 0.0) return {0.0, 1.0};
  if (x == 1.0) return {1.0, 0.0};
  const double front = detail::beta_front_factor(x, a, b);
  BetaTails out;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    out.lower = front * beta_continued_fraction(a, b, x, front) / a;
    out.upper = 1.0 - out.lower;
  } else {
    out.upper = front * beta_continued_fraction(b, a, 1.0 - x, front) / b;
    out.lower = 1.0 - out.upper;
  }
  return out;
}

double regularized_incomplete_beta(double x, double a, double b) {
  return incomplete_beta_tails(x, a, b).lower;
}

Rational incomplete_beta_exact(const Rational& x, std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw DomainError("exact incomplete beta needs integer shapes >= 1");
  if (x < Rational(0) || x > Rational(1)) throw DomainError("incomplete beta needs 0 <= x <= 1");
  if (x.sign() == 0) return Rational(0);
  if (x == Rational(1)) return Rational(1);
  // integral_0^x t^(a-1) (1-t)^(b-1) dt with (1-t)^(b-1) expanded binomially.
  mpq_class integral = 0;
  mpq_class power = x.pow(static_cast<unsigned long>(a)).raw();
  const mpq_class xq = x.raw();
  for (std::uint64_t j = 0; j < b; ++j) {
    mpq_class term(binomial_coefficient(b - 1, j), BigInt(1));
    term *= power;
    term /= mpq_class(static_cast<unsigned long>(a + j));
    if (j % 2 == 0) {
      integral += term;
    } else {
      integral -= term;
    }
    power *= xq;
  }
  // 1 / B(a, b) = (a+b-1)! / ((a-1)! (b-1)!)
  BigInt fa, fb, fab;
  mpz_fac_ui(fa.get_mpz_t(), static_cast<unsigned long>(a - 1));
  mpz_fac_ui(fb.get_mpz_t(), static_cast<unsigned long>(b - 1));
  mpz_fac_ui(fab.get_mpz_t(), static_cast<unsigned long>(a + b - 1));
  return Rational(integral) * Rational(fab, BigInt(fa * fb));
}

Probability posterior_interval_prob(const BetaParams& prior, const ObservedCounts& data,
                                    const IntervalQuery& query, NumericMode mode) {
  const BetaParams post = posterior(prior, data);
  if (mode.is_exact()) {
    if (!post.integer_shapes()) {
      throw UnsupportedError("exact posterior intervals need integer Beta shapes");
    }
    const std::uint64_t a = as_count(post.a());
    const std::uint64_t b = as_count(post.b());
    return Probability::from_exact(incomplete_beta_exact(query.l2(), a, b) -
                                   incomplete_beta_exact(query.l1(), a, b));
  }
  const BetaTails t1 = incomplete_beta_tails(query.l1().to_double(), post.a(), post.b());
  const BetaTails t2 = incomplete_beta_tails(query.l2().to_double(), post.a(), post.b());
  // Subtract in whichever tail keeps the operands small.
  const double prob = t2.lower <= t1.upper ? t2.lower - t1.lower : t1.upper - t2.upper;
  return Probability::from_float(std::clamp(prob, 0.0, 1.0));
}

IntervalQuery hartley_band(const ObservedCounts& data, const Rational& eps) {
  if (data.total() == 0) throw DomainError("no observations: the ratio p/(p+q) is undefined");
  if (eps.sign() <= 0) throw DomainError("eps must be positive");
  const Rational xbar(static_cast<long long>(data.p), static_cast<long long>(data.total()));
  return IntervalQuery(std::max(Rational(0), xbar - eps), std::min(Rational(1), xbar + eps));
}

Probability hartley_deviation(const BetaParams& prior, const ObservedCounts& data,
                              const Rational& eps, NumericMode mode) {
  return posterior_interval_prob(prior, data, hartley_band(data, eps), mode);
}

}  // namespace inversio
