#ifndef INVERSIO_BERNOULLI_DIRECT_HPP
#define INVERSIO_BERNOULLI_DIRECT_HPP

#include <cstdint>
#include <optional>

#include "inversio/numeric.hpp"
#include "inversio/rational.hpp"

namespace inversio {

/// Bernoulli's moral-certainty setup: theta = r/t, eps = 1/t with t = r + s,
/// and odds c : 1 (target probability c/(c+1)).
struct MoralCertaintySpec {
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  std::uint64_t c = 0;

  /// Throws DomainError when r, s or c is zero.
  MoralCertaintySpec(std::uint64_t r, std::uint64_t s, std::uint64_t c);
  /// Recovers (r, s) from theta and eps; eps must be 1/t and theta*t an integer.
  static MoralCertaintySpec from_theta_eps(const Rational& theta, const Rational& eps,
                                           std::uint64_t c);

  std::uint64_t t() const { return r + s; }
  Rational theta() const { return Rational(static_cast<long long>(r), static_cast<long long>(t())); }
  Rational eps() const { return Rational(1, static_cast<long long>(t())); }
  Rational target() const {
    return Rational(static_cast<long long>(c), static_cast<long long>(c + 1));
  }
};

enum class SampleSizeMethod { BernoulliBound, ExactSearch };

/// Intermediate quantities of Bernoulli's bound, one pair per tail:
/// m1 is the least m with ((r+1)/r)^m >= c(s-1) and N1 = ceil(m1 + s(m1-1)/(r+1));
/// m2, N2 likewise with r and s exchanged.
struct BoundDetail {
  std::uint64_t m1 = 0;
  std::uint64_t n1 = 0;
  std::uint64_t m2 = 0;
  std::uint64_t n2 = 0;
};

struct SampleSizeResult {
  std::uint64_t n = 0;
  double achieved_prob = 0.0;
  std::optional<Rational> achieved_exact;
  SampleSizeMethod method = SampleSizeMethod::ExactSearch;
  std::optional<BoundDetail> bound;
  // ExactSearch only: whether some m in (n, min(n + 10t, n_max)] drops back
  // below the target, and the first such m.
  bool falls_back_below = false;
  std::optional<std::uint64_t> fallback_n;
};

/// Bernoulli's conservative sample size n = t * max(N1, N2).
/// Throws UnsupportedError unless r >= 2 and s >= 2.
SampleSizeResult bernoulli_bound_n(const MoralCertaintySpec& spec);

/// c = round(target / (1 - target)).
std::uint64_t odds_from_target(const Rational& target);

struct SearchOptions {
  std::uint64_t n_max = 1'000'000;
  /// Largest n decided in exact arithmetic; beyond it Float mode with a
  /// 2^-40 cushion added to the target.
  std::uint64_t exact_limit = 5'000;
};

/// First n <= n_max with deviation_prob(n, theta, eps) >= target.
/// Throws NotFoundError carrying the best (n, prob) seen.
SampleSizeResult exact_search_n(const Rational& theta, const Rational& eps,
                                const Rational& target, const SearchOptions& options = {});

}  // namespace inversio

#endif  // INVERSIO_BERNOULLI_DIRECT_HPP
