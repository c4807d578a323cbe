// SPDX-License-Identifier: MIT
#pragma once

// Self-contained double-precision special functions: erfc, erfcx, normal
// pdf/cdf, and the inverse normal cdf. Pure stateless functions, safe for
// concurrent use. Accuracy is gated against the multiprecision oracle, not
// against any particular published implementation.

namespace ivsolve::specfun {

struct SpecFunConfig {
    // Argument above which the Laplace continued-fraction / asymptotic tail
    // form of erfcx is used instead of the rational kernels.
    double erfcx_switch_point = 4.0;
    // Central/tail split for the inverse normal cdf.
    double invcdf_tail_cut = 0.02425;
};

inline constexpr SpecFunConfig kSpecFunConfig{};
static_assert(kSpecFunConfig.erfcx_switch_point > 0.0);
static_assert(kSpecFunConfig.invcdf_tail_cut > 0.0 && kSpecFunConfig.invcdf_tail_cut < 0.5);

/// erf(z)
double erf(double z);

/// erfc(z) = 1 - erf(z)
double erfc(double z);

/// Scaled complementary error function e^{z^2} erfc(z). Strictly positive and
/// strictly decreasing on the reals; finite for z > -26.62, overflows below.
double erfcx(double z);

/// Standard normal density.
double norm_pdf(double z);

/// Standard normal cumulative, Phi(z) = erfc(-z/sqrt(2))/2.
double norm_cdf(double z);

/// Inverse of norm_cdf on the open interval (0,1).
/// Throws std::domain_error for p <= 0 or p >= 1.
double inv_norm_cdf(double p);

}  // namespace ivsolve::specfun
