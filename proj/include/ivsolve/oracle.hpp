// SPDX-License-Identifier: MIT
#pragma once

// High-precision ground truth: multiprecision Black pricer and reference
// implied-volatility inverter. Backs dataset generation and every derived
// expected value in the test suites. The multiprecision backend stays inside
// the .cpp; the public surface trades in doubles and decimal strings.

#include <optional>
#include <string>

namespace ivsolve::oracle {

struct PrecisionContext {
    int digits = 50;  // working decimal precision, >= 50
};

/// Normalized OTM Black price c(x,v), computed in multiprecision and rounded
/// to double.
double hp_price(double x, double v, const PrecisionContext& ctx = {});

/// ln c(x,v), multiprecision, rounded to double.
double hp_price_ln(double x, double v, const PrecisionContext& ctx = {});

/// Decimal rendering of c(x,v) with `out_digits` significant digits.
std::string hp_price_str(double x, double v, int out_digits, const PrecisionContext& ctx = {});

/// Reference total volatility for the exact double inputs (x, c): bracketing
/// bisection to ~10 digits, then multiprecision Newton. Throws NoConvergence
/// if the defensive iteration cap is hit. The optional guess skips most of
/// the bisection.
double hp_implied_vol(double x, double c, const PrecisionContext& ctx = {},
                      std::optional<double> guess = std::nullopt);

std::string hp_implied_vol_str(double x, double c, int out_digits,
                               const PrecisionContext& ctx = {},
                               std::optional<double> guess = std::nullopt);

/// |v_hat - v_ref| / (nextUp(v_ref) - v_ref): error in units of the local
/// double spacing at the reference.
double ulp_error(double v_hat, double v_ref);

/// Decimal digits of agreement of hp_price between 50- and 120-digit runs.
double price_agreement_digits(double x, double v);

/// Multiprecision scaled complementary error function, rounded to double.
double hp_erfcx(double z, const PrecisionContext& ctx = {});

/// Multiprecision normal cdf, rounded to double.
double hp_norm_cdf(double z, const PrecisionContext& ctx = {});

/// Root of norm_cdf(z) = p, multiprecision bisection + Newton, rounded.
double hp_inv_norm_cdf(double p, const PrecisionContext& ctx = {});

/// Bachelier normalized price v*phi(m/v) - m*Phi(-m/v) rounded to double;
/// forward integral used as the independent oracle for the microscopic branch.
double hp_bachelier_price(double m, double v, const PrecisionContext& ctx = {});

/// a(h) = 1 + h Phi(h)/phi(h), multiprecision, rounded to double.
double hp_coeff_a(double h, const PrecisionContext& ctx = {});

/// Normalized price at the exact log-moneyness ln(ex) of a stored dataset
/// case; the case is defined by its ex double, so the reference prices at
/// the exact logarithm rather than at a rounded x.
double hp_price_from_ex(double ex, double v, const PrecisionContext& ctx = {});

/// sigma * sqrt(T) computed in multiprecision and rounded once.
double hp_total_vol(double sigma, double expiry, const PrecisionContext& ctx = {});

/// Undiscounted call price on (forward, strike) at total volatility v; used
/// by the grid price filters.
double hp_call_price(double forward, double strike, double v,
                     const PrecisionContext& ctx = {});

}  // namespace ivsolve::oracle
