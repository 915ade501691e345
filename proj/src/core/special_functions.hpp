#ifndef INVERSIO_SRC_SPECIAL_FUNCTIONS_HPP
#define INVERSIO_SRC_SPECIAL_FUNCTIONS_HPP

#include <cstdint>

namespace inversio::detail {

inline constexpr double kLn2Pi = 1.837877066409345483560659472811;  // ln(2 pi)
inline constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;

/// ln Gamma(z + 1) - (z + 1/2) ln z + z - ln(2 pi)/2, for z > 0.
double stirlerr(double z);

/// Deviance term x ln(x / m) + m - x, stable when x is close to m.
double bd0(double x, double m);

/// Binomial pmf by the saddle-point decomposition; p + q = 1 with q passed
/// separately so that it need not be formed as 1 - p.
double binomial_pmf_saddle(std::uint64_t n, std::uint64_t k, double p, double q);
double binomial_log_pmf_saddle(std::uint64_t n, std::uint64_t k, double p, double q);

/// x^a (1 - x)^b / B(a, b) for 0 < x < 1.
double beta_front_factor(double x, double a, double b);

}  // namespace inversio::detail

#endif  // INVERSIO_SRC_SPECIAL_FUNCTIONS_HPP
