#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "inversio/bayes_inverse.hpp"
#include "inversio/bernoulli_direct.hpp"
#include "inversio/demoivre_approx.hpp"
#include "inversio/errors.hpp"
#include "inversio/exact_binomial.hpp"
#include "inversio/rational.hpp"
#include "inversio/runs.hpp"

namespace inversio::testing {
namespace {

using Rng = std::mt19937_64;

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

/// a/b with 2 <= b <= max_den and 0 < a < b.
Rational interior_theta(Rng& rng, std::uint64_t max_den = 40) {
  const auto b = uniform(rng, 2, max_den);
  const auto a = uniform(rng, 1, b - 1);
  return Rational(static_cast<long long>(a), static_cast<long long>(b));
}

/// Drives `body` over `cases` draws. The body returns an empty string on
/// success or a description of the violation.
PropertyOutcome drive(std::uint64_t cases, std::uint64_t seed,
                      const std::function<std::string(Rng&)>& body) {
  Rng rng(seed);
  PropertyOutcome out;
  for (std::uint64_t i = 0; i < cases; ++i) {
    std::string failure;
    try {
      failure = body(rng);
    } catch (const std::exception& e) {
      failure = std::string("unexpected exception: ") + e.what();
    }
    ++out.cases;
    if (!failure.empty()) {
      if (out.failures == 0) out.first_failure = "case " + std::to_string(i) + ": " + failure;
      ++out.failures;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

template <typename... Parts>
std::string describe(const Parts&... parts) {
  std::ostringstream os;
  ((os << parts << ' '), ...);
  return os.str();
}

const NumericMode kExact = NumericMode::exact();

PropertyOutcome pmf_sums_to_one(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 1, 80);
    // Occasionally hit the degenerate endpoints.
    Rational theta = interior_theta(rng);
    if (uniform(rng, 0, 19) == 0) theta = Rational(static_cast<long long>(uniform(rng, 0, 1)));
    const BinomialModel model(n, theta);
    Rational total(0);
    for (std::uint64_t k = 0; k <= n; ++k) total += *pmf(model, k, kExact).exact;
    if (total != Rational(1)) return describe("n", n, "theta", theta, "sum", total);
    if (*interval_count_prob(model, 0, n, kExact).exact != Rational(1)) return describe("full interval", n, theta);
    return {};
  });
}

PropertyOutcome interval_additivity(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 2, 200);
    const BinomialModel model(n, interior_theta(rng));
    auto lo = uniform(rng, 0, n - 1);
    auto hi = uniform(rng, lo + 1, n);
    const auto mid = uniform(rng, lo, hi - 1);
    const Rational whole = *interval_count_prob(model, lo, hi, kExact).exact;
    const Rational parts = *interval_count_prob(model, lo, mid, kExact).exact +
                           *interval_count_prob(model, mid + 1, hi, kExact).exact;
    if (whole != parts) return describe("n", n, "lo", lo, "mid", mid, "hi", hi);
    return {};
  });
}

PropertyOutcome deviation_band_is_strict(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 1, 1000);
    const Rational theta = interior_theta(rng, 60);
    const Rational eps(1, static_cast<long long>(uniform(rng, 2, 60)));
    const auto band = deviation_band(n, theta, eps);
    const Rational nn(static_cast<long long>(n));
    for (std::uint64_t k = 0; k <= n; ++k) {
      const bool inside = (Rational(static_cast<long long>(k)) / nn - theta).abs() < eps;
      const bool claimed = band && band->first <= k && k <= band->second;
      if (inside != claimed) return describe("n", n, "theta", theta, "eps", eps, "k", k);
    }
    return {};
  });
}

PropertyOutcome binomial_symmetry(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 1, 300);
    const auto k = uniform(rng, 0, n);
    const Rational theta = interior_theta(rng, 50);
    const Rational left = *pmf(BinomialModel(n, theta), k, kExact).exact;
    const Rational right = *pmf(BinomialModel(n, Rational(1) - theta), n - k, kExact).exact;
    if (left != right) return describe("n", n, "k", k, "theta", theta);
    return {};
  });
}

PropertyOutcome deviation_matches_filter_and_sum(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 1, 500);
    const Rational theta = interior_theta(rng, 30);
    const Rational eps(static_cast<long long>(uniform(rng, 1, 5)), static_cast<long long>(uniform(rng, 6, 60)));
    const BinomialModel model(n, theta);
    const Rational nn(static_cast<long long>(n));
    Rational sum(0);
    for (std::uint64_t k = 0; k <= n; ++k) {
      if ((Rational(static_cast<long long>(k)) / nn - theta).abs() < eps) sum += *pmf(model, k, kExact).exact;
    }
    if (*deviation_prob(model, eps, kExact).exact != sum) return describe("n", n, "theta", theta, "eps", eps);
    return {};
  });
}

PropertyOutcome pmf_float_matches_exact(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 1, 2000);
    const auto b = uniform(rng, 2, 64);
    const auto a = uniform(rng, 1, b - 1);
    const double mean = static_cast<double>(n * a) / static_cast<double>(b);
    const double sd = std::sqrt(mean * static_cast<double>(b - a) / static_cast<double>(b));
    const double z = std::uniform_real_distribution<double>(-8.0, 8.0)(rng);
    const double kd = std::clamp(std::round(mean + z * sd), 0.0, static_cast<double>(n));
    const auto k = static_cast<std::uint64_t>(kd);

    // Independent oracle: GMP's own binomial coefficient.
    mpz_class c, num_a, num_b, den;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    mpz_ui_pow_ui(num_a.get_mpz_t(), a, k);
    mpz_ui_pow_ui(num_b.get_mpz_t(), b - a, n - k);
    mpz_ui_pow_ui(den.get_mpz_t(), b, n);
    const Rational exact(BigInt(c * num_a * num_b), den);

    const double approx = pmf_float(n, static_cast<double>(a) / static_cast<double>(b), k);
    const Rational rel = ((Rational::from_double(approx) - exact) / exact).abs();
    if (rel.to_double() > std::ldexp(1.0, -40)) {
      return describe("n", n, "k", k, "theta", a, "/", b, "rel", rel.to_double());
    }
    return {};
  });
}

PropertyOutcome deviation_float_matches_exact(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 1, 3000);
    const Rational theta = interior_theta(rng, 32);
    const Rational eps(1, static_cast<long long>(uniform(rng, 4, 64)));
    const BinomialModel model(n, theta);
    const double exact = deviation_prob(model, eps, kExact).value;
    const double fl = deviation_prob(model, eps, NumericMode::floating()).value;
    if (std::abs(fl - exact) > 1e-12 * std::max(exact, 1e-300)) {
      return describe("n", n, "theta", theta, "eps", eps, "exact", exact, "float", fl);
    }
    return {};
  });
}

PropertyOutcome bernoulli_bound_is_conservative(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const MoralCertaintySpec spec(uniform(rng, 2, 10), uniform(rng, 2, 10), uniform(rng, 10, 1000));
    const SampleSizeResult res = bernoulli_bound_n(spec);
    const BinomialModel model(res.n, spec.theta());
    const Probability p =
        deviation_prob(model, spec.eps(), res.n <= 5000 ? kExact : NumericMode::floating());
    const bool ok = p.exact ? *p.exact >= spec.target() : p.value >= spec.target().to_double();
    if (!ok) return describe("r", spec.r, "s", spec.s, "c", spec.c, "n", res.n, "prob", p.value);
    return {};
  });
}

PropertyOutcome search_finds_first_crossing(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const Rational theta = interior_theta(rng, 12);
    const Rational eps(1, static_cast<long long>(uniform(rng, 3, 12)));
    const Rational target(static_cast<long long>(uniform(rng, 50, 99)), 100);
    const SampleSizeResult res = exact_search_n(theta, eps, target);
    const auto at = [&](std::uint64_t n) { return *deviation_prob(BinomialModel(n, theta), eps, kExact).exact; };
    if (at(res.n) < target) return describe("below target at n", res.n);
    for (std::uint64_t n = 1; n < res.n; ++n) {
      if (at(n) >= target) return describe("earlier crossing at", n, "reported", res.n);
    }
    return {};
  });
}

PropertyOutcome posterior_is_conjugate(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const BetaParams prior(static_cast<double>(uniform(rng, 1, 20)) / 2.0,
                           static_cast<double>(uniform(rng, 1, 20)) / 2.0);
    const ObservedCounts d1{uniform(rng, 0, 100), uniform(rng, 0, 100)};
    const ObservedCounts d2{uniform(rng, 0, 100), uniform(rng, 0, 100)};
    if (posterior(prior, d1 + d2) != posterior(posterior(prior, d1), d2)) {
      return describe("prior", prior.a(), prior.b(), "d1", d1.p, d1.q, "d2", d2.p, d2.q);
    }
    return {};
  });
}

PropertyOutcome incomplete_beta_matches_polynomial(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto a = uniform(rng, 1, 60);
    const auto b = uniform(rng, 1, 60);
    const auto den = uniform(rng, 2, 1000);
    const Rational x(static_cast<long long>(uniform(rng, 1, den - 1)), static_cast<long long>(den));
    const double exact = incomplete_beta_exact(x, a, b).to_double();
    const double cf = regularized_incomplete_beta(x.to_double(), static_cast<double>(a), static_cast<double>(b));
    // Tiny values carry an absolute floor; everything else is relative.
    const double scale = std::max(std::abs(exact), 1e-290);
    if (std::abs(cf - exact) > 1e-10 * scale) return describe("x", x, "a", a, "b", b, "exact", exact, "cf", cf);
    return {};
  });
}

PropertyOutcome incomplete_beta_reflection(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    std::uniform_real_distribution<double> shape(0.1, 500.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a = shape(rng);
    const double b = shape(rng);
    const double x = unit(rng);
    const BetaTails left = incomplete_beta_tails(x, a, b);
    const BetaTails right = incomplete_beta_tails(1.0 - x, b, a);
    if (std::abs(left.lower + left.upper - 1.0) > 1e-13) return describe("tails do not sum to 1", x, a, b);
    // 1 - x is not exact in binary, so allow for its rounding.
    const bool close = std::abs(left.lower - right.upper) <= 1e-9 * std::max(left.lower, 1e-290) ||
                       std::abs(left.lower - right.upper) <= 1e-13;
    if (!close) return describe("reflection", x, a, b, left.lower, right.upper);
    return {};
  });
}

PropertyOutcome posterior_interval_additivity(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const BetaParams prior(static_cast<double>(uniform(rng, 1, 3)), static_cast<double>(uniform(rng, 1, 3)));
    const ObservedCounts data{uniform(rng, 0, 25), uniform(rng, 0, 25)};
    std::vector<long long> cuts{static_cast<long long>(uniform(rng, 0, 100)), static_cast<long long>(uniform(rng, 0, 100)),
                                static_cast<long long>(uniform(rng, 0, 100))};
    std::sort(cuts.begin(), cuts.end());
    const Rational l1(cuts[0], 100), mid(cuts[1], 100), l2(cuts[2], 100);
    const auto prob = [&](const Rational& lo, const Rational& hi) {
      return *posterior_interval_prob(prior, data, IntervalQuery(lo, hi), kExact).exact;
    };
    const Rational whole = prob(l1, l2);
    if (whole != prob(l1, mid) + prob(mid, l2)) return describe("cuts", l1, mid, l2);
    if (whole < Rational(0) || whole > Rational(1)) return describe("out of range", whole);
    return {};
  });
}

PropertyOutcome posterior_swap_symmetry(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const ObservedCounts data{uniform(rng, 0, 30), uniform(rng, 0, 30)};
    long long a = static_cast<long long>(uniform(rng, 0, 200));
    long long b = static_cast<long long>(uniform(rng, 0, 200));
    if (a > b) std::swap(a, b);
    const Rational l1(a, 200), l2(b, 200);
    const BetaParams uniform_prior = BetaParams::uniform();
    const Rational direct = *posterior_interval_prob(uniform_prior, data, IntervalQuery(l1, l2), kExact).exact;
    const Rational mirrored = *posterior_interval_prob(uniform_prior, ObservedCounts{data.q, data.p},
                                                       IntervalQuery(Rational(1) - l2, Rational(1) - l1), kExact)
                                   .exact;
    if (direct != mirrored) return describe("p", data.p, "q", data.q, "l1", l1, "l2", l2);
    return {};
  });
}

PropertyOutcome posterior_complement(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const BetaParams prior(static_cast<double>(uniform(rng, 1, 4)), static_cast<double>(uniform(rng, 1, 4)));
    const ObservedCounts data{uniform(rng, 0, 25), uniform(rng, 0, 25)};
    const Rational x(static_cast<long long>(uniform(rng, 0, 97)), 97);
    const auto prob = [&](const Rational& lo, const Rational& hi, NumericMode mode) {
      return posterior_interval_prob(prior, data, IntervalQuery(lo, hi), mode);
    };
    if (*prob(Rational(0), x, kExact).exact + *prob(x, Rational(1), kExact).exact != Rational(1)) {
      return describe("exact complement fails at", x);
    }
    const double fl = prob(Rational(0), x, NumericMode::floating()).value + prob(x, Rational(1), NumericMode::floating()).value;
    if (std::abs(fl - 1.0) > 1e-13) return describe("float complement", x, fl);
    return {};
  });
}

PropertyOutcome posterior_exact_matches_float(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto total = uniform(rng, 0, 60);
    const auto p = uniform(rng, 0, total);
    const ObservedCounts data{p, total - p};
    long long a = static_cast<long long>(uniform(rng, 0, 40));
    long long b = static_cast<long long>(uniform(rng, 0, 40));
    if (a > b) std::swap(a, b);
    const IntervalQuery query(Rational(a, 40), Rational(b, 40));
    const double exact = posterior_interval_prob(BetaParams::uniform(), data, query, kExact).value;
    const double fl = posterior_interval_prob(BetaParams::uniform(), data, query, NumericMode::floating()).value;
    if (std::abs(exact - fl) > 1e-10) return describe("p", p, "q", total - p, "limits", a, b, exact, fl);
    return {};
  });
}

PropertyOutcome runs_recurrence_matches_enumeration(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 1, 14);
    const RunQuery query(n, uniform(rng, 1, n), interior_theta(rng, 16));
    const Rational dp = *run_prob(query, kExact).exact;
    const Rational brute = run_prob_bruteforce(query);
    if (dp != brute) return describe("n", n, "r", query.r(), "theta", query.theta(), dp, brute);
    return {};
  });
}

PropertyOutcome runs_are_monotone(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 2, 120);
    const auto r = uniform(rng, 1, n - 1);
    const Rational theta = interior_theta(rng, 20);
    const auto p = [&](std::uint64_t nn, std::uint64_t rr) { return *run_prob(RunQuery(nn, rr, theta), kExact).exact; };
    const Rational base = p(n, r);
    if (p(n + 1, r) < base) return describe("not increasing in n", n, r, theta);
    if (p(n, r + 1) > base) return describe("not decreasing in r", n, r, theta);
    const Rational higher = theta + (Rational(1) - theta) / Rational(static_cast<long long>(uniform(rng, 2, 9)));
    if (*run_prob(RunQuery(n, r, higher), kExact).exact < base) return describe("not increasing in theta", n, r, theta);
    return {};
  });
}

PropertyOutcome runs_mass_conservation(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 1, 60);
    const RunQuery query(n, uniform(rng, 1, n), interior_theta(rng, 20));
    const auto trace = run_prob_trace(query);
    if (trace.size() != n) return describe("trace length", trace.size(), "for n", n);
    for (std::size_t i = 0; i < trace.size(); ++i) {
      if (trace[i].no_run_mass + trace[i].absorbed != Rational(1)) return describe("mass leak at step", i + 1);
    }
    if (trace.back().absorbed != *run_prob(query, kExact).exact) return describe("final mass differs", n);
    return {};
  });
}

PropertyOutcome stirling_error_below_next_term(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto n = uniform(rng, 1, 30);
    const SeriesExpansion series = series_terms(n, 12);
    const std::size_t k = uniform(rng, 0, std::min<std::size_t>(series.min_abs_index, 11) - 1);
    const double err = log_factorial_truncation_error(n, k);
    const double next = series.terms[k].abs().to_double();
    if (!(err <= next)) return describe("n", n, "k", k, "err", err, "next", next);
    return {};
  });
}

PropertyOutcome rational_round_trip(std::uint64_t cases, std::uint64_t seed) {
  return drive(cases, seed, [](Rng& rng) -> std::string {
    const auto num = static_cast<long long>(uniform(rng, 0, 2'000'000'000)) - 1'000'000'000;
    const auto den = static_cast<long long>(uniform(rng, 1, 1'000'000'000));
    const Rational q(num, den);
    if (Rational::parse(q.str()) != q) return describe("str round trip", q);
    const double d = std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    if (Rational::from_double(d).to_double() != d) return describe("double round trip", d);
    std::ostringstream dec;
    dec.precision(17);
    dec << d;
    const Rational parsed = Rational::parse(dec.str());
    if (parsed.to_double() != d) return describe("decimal parse", dec.str());
    return {};
  });
}

}  // namespace

const std::vector<PropertyDef>& property_registry() {
  static const std::vector<PropertyDef> registry{
      {"pmf_sums_to_one", pmf_sums_to_one},
      {"binomial_symmetry", binomial_symmetry},
      {"interval_additivity", interval_additivity},
      {"deviation_band_is_strict", deviation_band_is_strict},
      {"deviation_matches_filter_and_sum", deviation_matches_filter_and_sum},
      {"pmf_float_matches_exact", pmf_float_matches_exact},
      {"deviation_float_matches_exact", deviation_float_matches_exact},
      {"bernoulli_bound_is_conservative", bernoulli_bound_is_conservative},
      {"search_finds_first_crossing", search_finds_first_crossing},
      {"posterior_is_conjugate", posterior_is_conjugate},
      {"incomplete_beta_matches_polynomial", incomplete_beta_matches_polynomial},
      {"incomplete_beta_reflection", incomplete_beta_reflection},
      {"posterior_interval_additivity", posterior_interval_additivity},
      {"posterior_swap_symmetry", posterior_swap_symmetry},
      {"posterior_complement", posterior_complement},
      {"posterior_exact_matches_float", posterior_exact_matches_float},
      {"runs_recurrence_matches_enumeration", runs_recurrence_matches_enumeration},
      {"runs_are_monotone", runs_are_monotone},
      {"runs_mass_conservation", runs_mass_conservation},
      {"stirling_error_below_next_term", stirling_error_below_next_term},
      {"rational_round_trip", rational_round_trip},
  };
  return registry;
}

}  // namespace inversio::testing
