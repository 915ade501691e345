#include "special_functions.hpp"

#include <mpfr.h>

#include <array>
#include <cmath>
#include <limits>

namespace inversio::detail {

namespace {

constexpr int kTableMax = 15;

// stirlerr at the integers 0..15, evaluated once in 256-bit arithmetic.
const std::array<double, kTableMax + 1>& stirlerr_table() {
  static const std::array<double, kTableMax + 1> table = [] {
    std::array<double, kTableMax + 1> out{};
    mpfr_t acc, term, half_ln_2pi;
    mpfr_inits2(256, acc, term, half_ln_2pi, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(half_ln_2pi, MPFR_RNDN);
    mpfr_mul_ui(half_ln_2pi, half_ln_2pi, 2, MPFR_RNDN);
    mpfr_log(half_ln_2pi, half_ln_2pi, MPFR_RNDN);
    mpfr_div_ui(half_ln_2pi, half_ln_2pi, 2, MPFR_RNDN);
    // stirlerr(0) is the z -> 0 limit of ln Gamma(z+1) - (z+1/2) ln z ...,
    // which diverges; callers never request it. Store ln(2 pi)/2 - 1 to
    // mirror the usual convention.
    out[0] = mpfr_get_d(half_ln_2pi, MPFR_RNDN) - 1.0;
    for (int n = 1; n <= kTableMax; ++n) {
      mpfr_set_ui(acc, static_cast<unsigned long>(n + 1), MPFR_RNDN);
      mpfr_lngamma(acc, acc, MPFR_RNDN);
      mpfr_set_ui(term, static_cast<unsigned long>(n), MPFR_RNDN);
      mpfr_log(term, term, MPFR_RNDN);
      mpfr_mul_d(term, term, n + 0.5, MPFR_RNDN);
      mpfr_sub(acc, acc, term, MPFR_RNDN);
      mpfr_add_ui(acc, acc, static_cast<unsigned long>(n), MPFR_RNDN);
      mpfr_sub(acc, acc, half_ln_2pi, MPFR_RNDN);
      out[static_cast<std::size_t>(n)] = mpfr_get_d(acc, MPFR_RNDN);
    }
    mpfr_clears(acc, term, half_ln_2pi, static_cast<mpfr_ptr>(nullptr));
    return out;
  }();
  return table;
}

}  // namespace

double stirlerr(double z) {
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (z <= kTableMax) {
    const double rounded = std::nearbyint(z);
    if (rounded == z && z >= 0) return stirlerr_table()[static_cast<std::size_t>(z)];
    return std::lgamma(z + 1.0) - (z + 0.5) * std::log(z) + z - kLnSqrt2Pi;
  }
  const double nn = z * z;
  if (z > 500) return (S0 - S1 / nn) / z;
  if (z > 80) return (S0 - (S1 - S2 / nn) / nn) / z;
  if (z > 35) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / z;
  return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / z;
}

double bd0(double x, double m) {
  if (std::fabs(x - m) < 0.1 * (x + m)) {
    double v = (x - m) / (x + m);
    double s = (x - m) * v;
    if (std::fabs(s) < std::numeric_limits<double>::min()) return s;
    double ej = 2 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / m) + m - x;
}

double binomial_log_pmf_saddle(std::uint64_t n, std::uint64_t k, double p, double q) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (k > n) return kNegInf;
  if (p == 0) return k == 0 ? 0.0 : kNegInf;
  if (q == 0) return k == n ? 0.0 : kNegInf;
  const double nd = static_cast<double>(n);
  if (k == 0) return nd * std::log(q);
  if (k == n) return nd * std::log(p);
  const double kd = static_cast<double>(k);
  const double rest = nd - kd;
  const double lc = stirlerr(nd) - stirlerr(kd) - stirlerr(rest) - bd0(kd, nd * p) -
                    bd0(rest, nd * q);
  const double lf = kLn2Pi + std::log(kd) + std::log1p(-kd / nd);
  return lc - 0.5 * lf;
}

double binomial_pmf_saddle(std::uint64_t n, std::uint64_t k, double p, double q) {
  return std::exp(binomial_log_pmf_saddle(n, k, p, q));
}

double beta_front_factor(double x, double a, double b) {
  const double total = a + b;
  const double log_front = stirlerr(total) - stirlerr(a) - stirlerr(b) - bd0(a, x * total) -
                           bd0(b, (1.0 - x) * total);
  return std::sqrt(a * b / (2.0 * M_PI * total)) * std::exp(log_front);
}

}  // namespace inversio::detail
