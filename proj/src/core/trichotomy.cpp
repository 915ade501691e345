#include "inversio/trichotomy.hpp"

#include <algorithm>

#include <json.hpp>

#include "inversio/errors.hpp"

namespace inversio {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kExactPosteriorShapeLimit = 62.0;

Rational rational_from_json(const Json& j, const char* field) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  // dump() renders the shortest decimal that round-trips, e.g. 0.999.
  if (j.is_number()) return Rational::parse(j.dump());
  throw ParseError(std::string("scenario field '") + field + "' must be a rational string or number");
}

double shape_from_json(const Json& j, const char* field) {
  return rational_from_json(j, field).to_double();
}

std::uint64_t count_from_json(const Json& counts, const char* field) {
  if (!counts.contains(field)) return 0;
  const Json& j = counts[field];
  if (!j.is_number_unsigned()) {
    throw ParseError(std::string("scenario field '") + field + "' must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

Json rational_or_null(const std::optional<Rational>& q) {
  return q ? Json(q->str()) : Json(nullptr);
}

}  // namespace

void Scenario::validate() const {
  if (eps.sign() <= 0) throw DomainError("scenario eps must be positive");
  if (target <= Rational(0) || target >= Rational(1)) {
    throw DomainError("scenario target must lie strictly between 0 and 1");
  }
  if (theta_true && (*theta_true < Rational(0) || *theta_true > Rational(1))) {
    throw DomainError("theta_true must lie in [0, 1]");
  }
}

TrichotomyReport run_trichotomy(const Scenario& scenario) {
  scenario.validate();
  const bool have_counts = scenario.counts.total() > 0;
  if (!have_counts && !scenario.theta_true) {
    throw DomainError("nothing computable: no observations and no known theta");
  }
  TrichotomyReport report;

  if (scenario.theta_true) {
    SearchOptions options;
    options.n_max = scenario.n_max;
    const SampleSizeResult found =
        exact_search_n(*scenario.theta_true, scenario.eps, scenario.target, options);
    report.direct = DirectAnswer{found.n, found.achieved_prob, found.achieved_exact.has_value()};
    report.notes.emplace_back(
        "direct: Bernoulli's law; theta and eps known, least n with "
        "P(theta-eps < Xbar_n < theta+eps | theta) >= target");
  } else {
    report.notes.emplace_back("direct: unavailable; theta is unknown");
  }

  report.bayes.posterior = posterior(scenario.prior, scenario.counts);
  if (have_counts) {
    const IntervalQuery band = hartley_band(scenario.counts, scenario.eps);
    const Rational xbar(static_cast<long long>(scenario.counts.p),
                        static_cast<long long>(scenario.counts.total()));
    report.inverse_use = InverseUseAnswer{
        xbar, band.l1(), band.l2(),
        "xbar_n ~ theta for large n; a point estimate with a band, not a probability statement"};
    report.notes.emplace_back(
        "inverse_use: inverse use of Bernoulli's law; theta unknown, observed frequency taken "
        "as its approximation");

    const BetaParams& post = report.bayes.posterior;
    const bool exact = post.integer_shapes() && post.a() + post.b() <= kExactPosteriorShapeLimit;
    const Probability prob = posterior_interval_prob(
        scenario.prior, scenario.counts, band,
        exact ? NumericMode::exact() : NumericMode::floating());
    report.bayes.band_lo = band.l1();
    report.bayes.band_hi = band.l2();
    report.bayes.prob = prob.value;
    report.bayes.prob_exact = prob.exact;
    report.notes.emplace_back(
        "bayes: Bayes's theorem; theta unknown with a Beta prior, posterior P(l1 < theta < l2 | "
        "xbar_n) over the same band");
  } else {
    report.notes.emplace_back("inverse_use: unavailable; no observations");
    report.notes.emplace_back("bayes: prior only; no observations to condition on");
  }
  return report;
}

std::string scenario_to_json(const Scenario& scenario) {
  Json j;
  j["theta_true"] = rational_or_null(scenario.theta_true);
  j["counts"] = {{"p", scenario.counts.p}, {"q", scenario.counts.q}};
  j["eps"] = scenario.eps.str();
  j["target"] = scenario.target.str();
  j["prior"] = {{"a", scenario.prior.a()}, {"b", scenario.prior.b()}};
  j["n_max"] = scenario.n_max;
  return j.dump(2);
}

Scenario scenario_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed scenario JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scenario JSON must be an object");
  Scenario s;
  try {
    if (j.contains("theta_true") && !j["theta_true"].is_null()) {
      s.theta_true = rational_from_json(j["theta_true"], "theta_true");
    }
    if (j.contains("counts")) {
      if (!j["counts"].is_object()) throw ParseError("scenario 'counts' must be an object");
      s.counts.p = count_from_json(j["counts"], "p");
      s.counts.q = count_from_json(j["counts"], "q");
    }
    if (!j.contains("eps")) throw ParseError("scenario needs 'eps'");
    if (!j.contains("target")) throw ParseError("scenario needs 'target'");
    s.eps = rational_from_json(j["eps"], "eps");
    s.target = rational_from_json(j["target"], "target");
    if (j.contains("prior")) {
      const auto& prior = j["prior"];
      s.prior = BetaParams(prior.contains("a") ? shape_from_json(prior["a"], "prior.a") : 1.0,
                           prior.contains("b") ? shape_from_json(prior["b"], "prior.b") : 1.0);
    }
    if (j.contains("n_max")) s.n_max = count_from_json(j, "n_max");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed scenario JSON: ") + e.what());
  }
  s.validate();
  return s;
}

std::string report_to_json(const TrichotomyReport& report) {
  Json j;
  if (report.direct) {
    j["direct"] = {{"n", report.direct->n},
                   {"achieved_prob", report.direct->achieved_prob},
                   {"exact", report.direct->exact}};
  } else {
    j["direct"] = nullptr;
  }
  if (report.inverse_use) {
    j["inverse_use"] = {{"xbar", report.inverse_use->xbar.str()},
                        {"band", {report.inverse_use->band_lo.str(), report.inverse_use->band_hi.str()}},
                        {"statement", report.inverse_use->statement}};
  } else {
    j["inverse_use"] = nullptr;
  }
  Json bayes;
  bayes["posterior"] = {{"a", report.bayes.posterior.a()}, {"b", report.bayes.posterior.b()}};
  if (report.bayes.band_lo && report.bayes.band_hi) {
    bayes["band"] = {report.bayes.band_lo->str(), report.bayes.band_hi->str()};
  } else {
    bayes["band"] = nullptr;
  }
  bayes["prob"] = report.bayes.prob ? Json(*report.bayes.prob) : Json(nullptr);
  bayes["prob_exact"] = rational_or_null(report.bayes.prob_exact);
  j["bayes"] = bayes;
  j["notes"] = report.notes;
  return j.dump(2);
}

}  // namespace inversio
