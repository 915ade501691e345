#ifndef INVERSIO_RUNS_HPP
#define INVERSIO_RUNS_HPP

#include <cstdint>
#include <vector>

#include "inversio/numeric.hpp"
#include "inversio/rational.hpp"

namespace inversio {

/// At least one streak of r successes within n trials.
class RunQuery {
 public:
  /// Throws DomainError unless 1 <= r <= n and 0 <= theta <= 1.
  RunQuery(std::uint64_t n, std::uint64_t r, Rational theta);

  std::uint64_t n() const { return n_; }
  std::uint64_t r() const { return r_; }
  const Rational& theta() const { return theta_; }

 private:
  std::uint64_t n_;
  std::uint64_t r_;
  Rational theta_;
};

inline constexpr std::uint64_t kBruteforceMaxTrials = 22;

Probability run_prob(const RunQuery& query, NumericMode mode);

/// Enumerates all 2^n outcomes. Throws ResourceError for n > 22.
Rational run_prob_bruteforce(const RunQuery& query);

/// Exact DP trajectory: after trial i, the total mass still without a run
/// and the absorbed mass.
struct RunStep {
  Rational no_run_mass;
  Rational absorbed;
};
std::vector<RunStep> run_prob_trace(const RunQuery& query);

}  // namespace inversio

#endif  // INVERSIO_RUNS_HPP
