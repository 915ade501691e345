#include "inversio/runs.hpp"

#include <bit>
#include <numeric>
#include <string>

#include "inversio/errors.hpp"

namespace inversio {

namespace {

struct IntegerState {
  std::vector<BigInt> streak;  // numerators over v^i, indexed by streak length
  BigInt absorbed;
};

// One trial of the streak recurrence on numerators over a common power of v.
void advance(IntegerState& state, const BigInt& u, const BigInt& v, const BigInt& w) {
  const std::size_t r = state.streak.size();
  BigInt alive = 0;
  for (const auto& s : state.streak) alive += s;
  state.absorbed = state.absorbed * v + u * state.streak[r - 1];
  for (std::size_t j = r - 1; j >= 1; --j) state.streak[j] = u * state.streak[j - 1];
  state.streak[0] = w * alive;
}

IntegerState initial_state(std::uint64_t r) {
  IntegerState state;
  state.streak.assign(static_cast<std::size_t>(r), BigInt(0));
  state.streak[0] = 1;
  state.absorbed = 0;
  return state;
}

}  // namespace

RunQuery::RunQuery(std::uint64_t n, std::uint64_t r, Rational theta)
    : n_(n), r_(r), theta_(std::move(theta)) {
  if (r_ < 1 || r_ > n_) {
    throw DomainError("run length must satisfy 1 <= r <= n (got r=" + std::to_string(r_) +
                      ", n=" + std::to_string(n_) + ")");
  }
  if (theta_ < Rational(0) || theta_ > Rational(1)) throw DomainError("theta must lie in [0, 1]");
}

Probability run_prob(const RunQuery& query, NumericMode mode) {
  const std::uint64_t r = query.r();
  if (mode.is_exact()) {
    const BigInt u = query.theta().num();
    const BigInt v = query.theta().den();
    const BigInt w = v - u;
    IntegerState state = initial_state(r);
    for (std::uint64_t i = 0; i < query.n(); ++i) advance(state, u, v, w);
    BigInt denominator;
    mpz_pow_ui(denominator.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(query.n()));
    return Probability::from_exact(Rational(state.absorbed, denominator));
  }
  const double p = query.theta().to_double();
  const double q = (Rational(1) - query.theta()).to_double();
  std::vector<double> streak(static_cast<std::size_t>(r), 0.0);
  streak[0] = 1.0;
  double absorbed = 0.0;
  for (std::uint64_t i = 0; i < query.n(); ++i) {
    const double alive = std::accumulate(streak.begin(), streak.end(), 0.0);
    absorbed += p * streak.back();
    for (std::size_t j = streak.size() - 1; j >= 1; --j) streak[j] = p * streak[j - 1];
    streak[0] = q * alive;
  }
  return Probability::from_float(absorbed);
}

std::vector<RunStep> run_prob_trace(const RunQuery& query) {
  const BigInt u = query.theta().num();
  const BigInt v = query.theta().den();
  const BigInt w = v - u;
  IntegerState state = initial_state(query.r());
  std::vector<RunStep> steps;
  steps.reserve(static_cast<std::size_t>(query.n()));
  BigInt scale = 1;
  for (std::uint64_t i = 0; i < query.n(); ++i) {
    advance(state, u, v, w);
    scale *= v;
    BigInt alive = 0;
    for (const auto& s : state.streak) alive += s;
    steps.push_back({Rational(alive, scale), Rational(state.absorbed, scale)});
  }
  return steps;
}

Rational run_prob_bruteforce(const RunQuery& query) {
  const std::uint64_t n = query.n();
  if (n > kBruteforceMaxTrials) {
    throw ResourceError("brute-force enumeration is limited to n <= " +
                        std::to_string(kBruteforceMaxTrials) + " (got " + std::to_string(n) + ")");
  }
  const std::uint64_t r = query.r();
  std::vector<std::uint64_t> with_run(static_cast<std::size_t>(n + 1), 0);
  const std::uint64_t outcomes = std::uint64_t{1} << n;
  for (std::uint64_t seq = 0; seq < outcomes; ++seq) {
    // Bit i of `window` is set iff trials i..i+r-1 all succeed.
    std::uint64_t window = seq;
    for (std::uint64_t j = 1; j < r && window != 0; ++j) window &= seq >> j;
    if (window != 0) ++with_run[static_cast<std::size_t>(std::popcount(seq))];
  }
  const Rational theta = query.theta();
  const Rational fail = Rational(1) - theta;
  Rational total;
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (with_run[k] == 0) continue;
    total += Rational(static_cast<long long>(with_run[k])) * theta.pow(static_cast<unsigned long>(k)) *
             fail.pow(static_cast<unsigned long>(n - k));
  }
  return total;
}

}  // namespace inversio
