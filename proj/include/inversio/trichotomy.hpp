#ifndef INVERSIO_TRICHOTOMY_HPP
#define INVERSIO_TRICHOTOMY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inversio/bayes_inverse.hpp"
#include "inversio/bernoulli_direct.hpp"
#include "inversio/rational.hpp"

namespace inversio {

struct Scenario {
  std::optional<Rational> theta_true;
  ObservedCounts counts;
  Rational eps;
  Rational target;
  BetaParams prior;
  std::uint64_t n_max = 1'000'000;

  /// Throws DomainError unless eps > 0 and 0 < target < 1.
  void validate() const;
};

/// Known theta: how many trials make the eps-band probability reach target.
struct DirectAnswer {
  std::uint64_t n = 0;
  double achieved_prob = 0.0;
  bool exact = false;
};

/// Unknown theta: the observed frequency taken as the estimate. Carries no
/// probability of its own.
struct InverseUseAnswer {
  Rational xbar;
  Rational band_lo;
  Rational band_hi;
  std::string statement;
};

/// Unknown theta with a prior: posterior mass over the same band.
struct BayesAnswer {
  BetaParams posterior;
  std::optional<Rational> band_lo;
  std::optional<Rational> band_hi;
  std::optional<double> prob;
  std::optional<Rational> prob_exact;
};

struct TrichotomyReport {
  std::optional<DirectAnswer> direct;
  std::optional<InverseUseAnswer> inverse_use;
  BayesAnswer bayes;
  std::vector<std::string> notes;
};

/// Throws DomainError when there are no counts and no theta_true.
TrichotomyReport run_trichotomy(const Scenario& scenario);

std::string scenario_to_json(const Scenario& scenario);
/// Throws ParseError on malformed input, DomainError on invalid values.
Scenario scenario_from_json(std::string_view text);
std::string report_to_json(const TrichotomyReport& report);

}  // namespace inversio

#endif  // INVERSIO_TRICHOTOMY_HPP
