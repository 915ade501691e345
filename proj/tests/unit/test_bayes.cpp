#include <gtest/gtest.h>

#include <cmath>

#include "inversio/bayes_inverse.hpp"
#include "inversio/errors.hpp"

using namespace inversio;

namespace {

Rational q(const char* text) { return Rational::parse(text); }

const NumericMode kExact = NumericMode::exact();
const NumericMode kFloat = NumericMode::floating();

}  // namespace

TEST(BetaParams, ValidatesShapes) {
  EXPECT_THROW(BetaParams(0.0, 1.0), DomainError);
  EXPECT_THROW(BetaParams(1.0, -2.0), DomainError);
  EXPECT_THROW(BetaParams(std::nan(""), 1.0), DomainError);
  EXPECT_TRUE(BetaParams::uniform().integer_shapes());
  EXPECT_FALSE(BetaParams(0.5, 1.0).integer_shapes());
}

TEST(Posterior, AddsCountsToShapes) {
  const BetaParams post = posterior(BetaParams(2.0, 3.0), ObservedCounts{7, 4});
  EXPECT_EQ(post, BetaParams(9.0, 7.0));
}

TEST(IntervalQuery, RequiresOrderedUnitLimits) {
  EXPECT_THROW(IntervalQuery(q("1/2"), q("1/3")), DomainError);
  EXPECT_THROW(IntervalQuery(q("-1/2"), q("1/3")), DomainError);
  EXPECT_THROW(IntervalQuery(q("1/2"), q("3/2")), DomainError);
  EXPECT_NO_THROW(IntervalQuery(q("1/2"), q("1/2")));
}

TEST(IncompleteBeta, ReferenceValues) {
  // Reference values from 30-digit quadrature.
  EXPECT_NEAR(regularized_incomplete_beta(0.2, 0.5, 5.0), 0.855072394595919592, 1e-14);
  EXPECT_NEAR(regularized_incomplete_beta(0.6, 601.0, 401.0), 0.503431930766550433, 1e-12);
  EXPECT_NEAR(regularized_incomplete_beta(0.55, 601.0, 401.0) / 7.22284888389373798e-4, 1.0, 1e-11);
  EXPECT_EQ(regularized_incomplete_beta(0.0, 2.0, 3.0), 0.0);
  EXPECT_EQ(regularized_incomplete_beta(1.0, 2.0, 3.0), 1.0);
  EXPECT_THROW(regularized_incomplete_beta(1.5, 2.0, 3.0), DomainError);
}

TEST(IncompleteBeta, ExactPolynomialMatchesClosedForms) {
  // I_x(1, b) = 1 - (1-x)^b and I_x(a, 1) = x^a.
  EXPECT_EQ(incomplete_beta_exact(q("1/3"), 1, 4), Rational(1) - q("2/3").pow(4));
  EXPECT_EQ(incomplete_beta_exact(q("1/3"), 5, 1), q("1/3").pow(5));
  EXPECT_EQ(incomplete_beta_exact(q("1/2"), 7, 7), q("1/2"));
  EXPECT_EQ(incomplete_beta_exact(Rational(0), 3, 3), Rational(0));
  EXPECT_EQ(incomplete_beta_exact(Rational(1), 3, 3), Rational(1));
  EXPECT_THROW(incomplete_beta_exact(q("1/2"), 0, 3), DomainError);
}

TEST(IncompleteBeta, LargeShapesFloatAgainstExact) {
  for (const char* x : {"11/20", "3/5", "13/20"}) {
    const double exact = incomplete_beta_exact(q(x), 601, 401).to_double();
    const double cf = regularized_incomplete_beta(q(x).to_double(), 601.0, 401.0);
    EXPECT_NEAR(cf / exact, 1.0, 1e-11) << x;
  }
}

TEST(IncompleteBeta, TailsKeepUpperTailPrecision) {
  const BetaTails t = incomplete_beta_tails(0.9, 5.0, 300.0);
  EXPECT_EQ(t.lower, 1.0);
  EXPECT_GT(t.upper, 0.0);
  EXPECT_LT(t.upper, 1e-200);
}

TEST(PosteriorInterval, SingleSuccessUniformPrior) {
  const Probability p = posterior_interval_prob(BetaParams::uniform(), ObservedCounts{1, 0},
                                                IntervalQuery(q("1/2"), Rational(1)), kExact);
  EXPECT_EQ(p.exact, std::optional<Rational>(q("3/4")));
  const Probability f = posterior_interval_prob(BetaParams::uniform(), ObservedCounts{1, 0},
                                                IntervalQuery(q("1/2"), Rational(1)), kFloat);
  EXPECT_NEAR(f.value, 0.75, 1e-15);
}

TEST(PosteriorInterval, FractionalShapesNeedFloatMode) {
  const IntervalQuery query(q("1/4"), q("3/4"));
  EXPECT_THROW(posterior_interval_prob(BetaParams(0.5, 0.5), ObservedCounts{3, 2}, query, kExact),
               UnsupportedError);
  EXPECT_NEAR(posterior_interval_prob(BetaParams(0.5, 0.5), ObservedCounts{2, 3}, IntervalQuery(q("3/10"), q("3/5")), kFloat)
                  .value,
              0.522932076572117423, 1e-13);
}

TEST(HartleyBand, CentersOnObservedRatioAndClips) {
  const IntervalQuery band = hartley_band(ObservedCounts{6, 4}, q("1/10"));
  EXPECT_EQ(band.l1(), q("1/2"));
  EXPECT_EQ(band.l2(), q("7/10"));
  const IntervalQuery clipped = hartley_band(ObservedCounts{10, 0}, q("1/5"));
  EXPECT_EQ(clipped.l1(), q("4/5"));
  EXPECT_EQ(clipped.l2(), Rational(1));
  EXPECT_THROW(hartley_band(ObservedCounts{0, 0}, q("1/10")), DomainError);
  EXPECT_THROW(hartley_band(ObservedCounts{1, 1}, Rational(0)), DomainError);
}

TEST(HartleyDeviation, SixSuccessesFourFailures) {
  const Probability exact = hartley_deviation(BetaParams::uniform(), ObservedCounts{6, 4}, q("1/10"), kExact);
  EXPECT_EQ(exact.exact, std::optional<Rational>(q("2576406601/5000000000")));
  // Oracle: direct polynomial difference for Beta(7, 5).
  EXPECT_EQ(*exact.exact, incomplete_beta_exact(q("7/10"), 7, 5) - incomplete_beta_exact(q("1/2"), 7, 5));
  const Probability fl = hartley_deviation(BetaParams::uniform(), ObservedCounts{6, 4}, q("1/10"));
  EXPECT_NEAR(fl.value, 0.5152813202, 1e-10);
}

TEST(HartleyDeviation, ConcentratesAsDataGrow) {
  double previous = 0.0;
  for (std::uint64_t scale : {3u, 30u, 300u, 3000u}) {
    const double p = hartley_deviation(BetaParams::uniform(), ObservedCounts{3 * scale, 2 * scale}, q("1/50")).value;
    EXPECT_GT(p, previous) << scale;
    previous = p;
  }
  EXPECT_GT(previous, 0.999);
}

TEST(WorkedExamples, PosteriorUpdates) {
  EXPECT_EQ(posterior(BetaParams::uniform(), ObservedCounts{0, 0}), BetaParams::uniform());
  EXPECT_EQ(posterior(BetaParams::uniform(), ObservedCounts{1, 0}), BetaParams(2.0, 1.0));
  EXPECT_EQ(posterior(BetaParams::uniform(), ObservedCounts{3, 2}), BetaParams(4.0, 3.0));
}

TEST(WorkedExamples, IntervalMasses) {
  EXPECT_EQ(*posterior_interval_prob(BetaParams::uniform(), ObservedCounts{0, 0},
                                     IntervalQuery(Rational(0), Rational(1)), kExact)
                 .exact,
            Rational(1));
  EXPECT_EQ(*posterior_interval_prob(BetaParams(10.0, 10.0), ObservedCounts{0, 0},
                                     IntervalQuery(Rational(0), q("1/2")), kExact)
                 .exact,
            q("1/2"));
  EXPECT_EQ(*hartley_deviation(BetaParams::uniform(), ObservedCounts{1, 1}, q("1/2"), kExact).exact, Rational(1));
  EXPECT_GE(hartley_deviation(BetaParams::uniform(), ObservedCounts{600, 400}, q("1/10")).value, 0.999);
}

TEST(WorkedExamples, IncompleteBetaSymmetricPoints) {
  for (double a : {1.0, 2.5, 7.0, 40.0}) EXPECT_NEAR(regularized_incomplete_beta(0.5, a, a), 0.5, 1e-14) << a;
  EXPECT_NEAR(regularized_incomplete_beta(0.5, 2.0, 1.0), 0.25, 1e-15);
  EXPECT_EQ(incomplete_beta_exact(q("1/2"), 2, 1), q("1/4"));
}

TEST(HartleyDeviation, LaplaceGridIncreases) {
  double previous = 0.0;
  for (std::uint64_t total : {10u, 100u, 1000u, 10000u}) {
    const double p =
        hartley_deviation(BetaParams::uniform(), ObservedCounts{3 * total / 5, 2 * total / 5}, q("1/50")).value;
    EXPECT_GT(p, previous) << total;
    previous = p;
  }
}
