#include "inversio/bernoulli_direct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "inversio/errors.hpp"
#include "inversio/exact_binomial.hpp"

namespace inversio {

namespace {

constexpr double kPrefilterMargin = 1e-9;
const double kFloatCushion = std::ldexp(1.0, -40);

BigInt to_big(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

// ((base+1)/base)^m >= rhs, decided in integers.
bool ratio_power_reaches(std::uint64_t base, std::uint64_t m, const BigInt& rhs) {
  BigInt lhs;
  BigInt den;
  mpz_pow_ui(lhs.get_mpz_t(), to_big(base + 1).get_mpz_t(), static_cast<unsigned long>(m));
  mpz_pow_ui(den.get_mpz_t(), to_big(base).get_mpz_t(), static_cast<unsigned long>(m));
  return lhs >= rhs * den;
}

// Least m >= 1 with ((base+1)/base)^m >= rhs.
std::uint64_t least_exponent(std::uint64_t base, const BigInt& rhs) {
  const double estimate = log_bigint(rhs) / std::log1p(1.0 / static_cast<double>(base));
  std::uint64_t m = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::max(0.0, std::ceil(estimate))));
  while (m > 1 && ratio_power_reaches(base, m - 1, rhs)) --m;
  while (!ratio_power_reaches(base, m, rhs)) ++m;
  return m;
}

std::uint64_t ceil_div(std::uint64_t num, std::uint64_t den) { return (num + den - 1) / den; }

struct Decision {
  bool meets = false;
  double prob = 0.0;
};

class CrossingOracle {
 public:
  CrossingOracle(const Rational& theta, const Rational& eps, const Rational& target,
                 std::uint64_t exact_limit)
      : theta_(theta), eps_(eps), target_(target), target_d_(target.to_double()),
        exact_limit_(exact_limit) {}

  Decision decide(std::uint64_t n) const {
    const BinomialModel model(n, theta_);
    const double pf = deviation_prob(model, eps_, NumericMode::floating()).value;
    if (n > exact_limit_) return {pf >= target_d_ + kFloatCushion, pf};
    if (pf < target_d_ - kPrefilterMargin) return {false, pf};
    if (pf > target_d_ + kPrefilterMargin) return {true, pf};
    const Probability exact = deviation_prob(model, eps_, NumericMode::exact());
    return {*exact.exact >= target_, exact.value};
  }

  bool exact_at(std::uint64_t n) const { return n <= exact_limit_; }

 private:
  Rational theta_;
  Rational eps_;
  Rational target_;
  double target_d_;
  std::uint64_t exact_limit_;
};

}  // namespace

MoralCertaintySpec::MoralCertaintySpec(std::uint64_t r_, std::uint64_t s_, std::uint64_t c_)
    : r(r_), s(s_), c(c_) {
  if (r == 0 || s == 0) throw DomainError("moral-certainty spec needs r >= 1 and s >= 1");
  if (c == 0) throw DomainError("odds c must be at least 1");
}

MoralCertaintySpec MoralCertaintySpec::from_theta_eps(const Rational& theta, const Rational& eps,
                                                      std::uint64_t c) {
  if (eps.sign() <= 0) throw DomainError("eps must be positive");
  if (eps.num() != 1 || !eps.den().fits_ulong_p()) {
    throw UnsupportedError("Bernoulli's bound needs eps = 1/t for an integer t, got " + eps.str());
  }
  const std::uint64_t t = eps.den().get_ui();
  const Rational scaled = theta * Rational(eps.den(), BigInt(1));
  if (!scaled.is_integer()) {
    throw UnsupportedError("theta * t must be an integer r (theta = r/t), got theta=" + theta.str());
  }
  if (scaled <= Rational(0) || scaled >= Rational(static_cast<long long>(t))) {
    throw DomainError("theta must satisfy 0 < theta < 1");
  }
  const std::uint64_t r = scaled.num().get_ui();
  return MoralCertaintySpec(r, t - r, c);
}

SampleSizeResult bernoulli_bound_n(const MoralCertaintySpec& spec) {
  if (spec.r < 2 || spec.s < 2) {
    throw UnsupportedError("Bernoulli's bound needs r >= 2 and s >= 2 (got r=" +
                           std::to_string(spec.r) + ", s=" + std::to_string(spec.s) + ")");
  }
  const BigInt c = to_big(spec.c);
  BoundDetail detail;
  detail.m1 = least_exponent(spec.r, c * to_big(spec.s - 1));
  detail.n1 = detail.m1 + ceil_div(spec.s * (detail.m1 - 1), spec.r + 1);
  detail.m2 = least_exponent(spec.s, c * to_big(spec.r - 1));
  detail.n2 = detail.m2 + ceil_div(spec.r * (detail.m2 - 1), spec.s + 1);

  SampleSizeResult result;
  result.method = SampleSizeMethod::BernoulliBound;
  result.n = spec.t() * std::max(detail.n1, detail.n2);
  result.bound = detail;
  result.achieved_prob =
      deviation_prob(BinomialModel(result.n, spec.theta()), spec.eps(), NumericMode::floating()).value;
  return result;
}

std::uint64_t odds_from_target(const Rational& target) {
  if (target <= Rational(0) || target >= Rational(1)) {
    throw DomainError("target must lie strictly between 0 and 1");
  }
  const Rational odds = target / (Rational(1) - target);
  const BigInt rounded = (odds + Rational(1, 2)).floor();
  if (!rounded.fits_ulong_p()) throw UnsupportedError("odds too large");
  return std::max<std::uint64_t>(1, rounded.get_ui());
}

SampleSizeResult exact_search_n(const Rational& theta, const Rational& eps, const Rational& target,
                                const SearchOptions& options) {
  if (theta < Rational(0) || theta > Rational(1)) throw DomainError("theta must lie in [0, 1]");
  if (eps.sign() <= 0) throw DomainError("eps must be positive");
  if (target <= Rational(0) || target >= Rational(1)) {
    throw DomainError("target must lie strictly between 0 and 1");
  }
  if (options.n_max < 1) throw DomainError("n_max must be at least 1");

  const CrossingOracle oracle(theta, eps, target, options.exact_limit);
  std::uint64_t best_n = 1;
  double best_prob = -1.0;
  const auto probe = [&](std::uint64_t n) {
    const Decision d = oracle.decide(n);
    if (d.prob > best_prob) {
      best_prob = d.prob;
      best_n = n;
    }
    return d.meets;
  };

  // Bracket: first power of two (or n_max) that meets the target.
  std::uint64_t upper = 1;
  while (!probe(upper)) {
    if (upper == options.n_max) {
      throw NotFoundError("no n <= " + std::to_string(options.n_max) + " reaches the target",
                          best_n, best_prob);
    }
    upper = std::min(upper * 2, options.n_max);
  }
  // Lattice effects make the probability non-monotone in n, so the first
  // crossing may sit anywhere below the bracket end.
  std::uint64_t first = upper;
  for (std::uint64_t n = 1; n < upper; ++n) {
    if (probe(n)) {
      first = n;
      break;
    }
  }

  SampleSizeResult result;
  result.method = SampleSizeMethod::ExactSearch;
  result.n = first;
  const BigInt t_big = eps.den();
  const std::uint64_t t = t_big.fits_ulong_p() ? t_big.get_ui() : options.n_max;
  const std::uint64_t window_end =
      std::min(options.n_max, first + std::min<std::uint64_t>(t, options.n_max) * 10);
  for (std::uint64_t m = first + 1; m <= window_end; ++m) {
    if (!oracle.decide(m).meets) {
      result.falls_back_below = true;
      result.fallback_n = m;
      break;
    }
  }
  const BinomialModel model(first, theta);
  if (oracle.exact_at(first)) {
    const Probability p = deviation_prob(model, eps, NumericMode::exact());
    result.achieved_exact = p.exact;
    result.achieved_prob = p.value;
  } else {
    result.achieved_prob = deviation_prob(model, eps, NumericMode::floating()).value;
  }
  return result;
}

}  // namespace inversio
