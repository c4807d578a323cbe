// SPDX-License-Identifier: MIT
#pragma once

// Black price evaluation paths for the normalized OTM call: textbook CDF,
// erfcx/log lower tail, erfcx/log upper tail, and the expanded reference
// evaluator with its region dispatch. All functions take x <= 0 and total
// volatility v (a.k.a. s) > 0.

namespace ivsolve::pricing {

struct HalfCoords {
    double h = 0.0;  // x / v
    double t = 0.0;  // v / 2
};

enum class Branch { Lower, Upper };

struct TailObjectiveEval {
    Branch branch = Branch::Lower;
    double log_value = 0.0;  // ln c (lower) or ln(1-c) (upper)
    double n_plus = 0.0;     // N+ or M+
    double n_minus = 0.0;    // N- or M-
    HalfCoords coords;
    bool degenerate = false;  // lower branch only: N+ - N- <= 0 in doubles
};

enum class RegionTag { RegionI, RegionII, Cody };

/// Textbook path: Phi(x/v + v/2) - e^{-x} Phi(x/v - v/2), clamped to [0,1].
double price_cdf(double x, double v);

/// ln c = -(h^2+t^2)/2 - ln2 - x/2 + ln(N+ - N-). Finite even where the
/// price itself underflows; `degenerate` flags total cancellation of the
/// erfcx difference (caller reroutes to a guard branch).
TailObjectiveEval log_price_lower(double x, double v);

/// ln(1-c) = -(h+t)^2/2 - ln2 + ln(M+ + M-). A sum of positives; never
/// degenerate.
TailObjectiveEval log_gap_upper(double x, double v);

/// Price through exp(log_price_lower), beta-normalized internally; the
/// mid-accuracy diagnostic path of the pricing comparison.
double price_erfcx_log(double x, double v);

/// Expanded-evaluator region dispatch in the (x, s) plane. Region I is
/// tested first.
RegionTag region_dispatch(double x, double s);

/// Expanded reference evaluator; returns the sqrt-forward normalized price
/// beta(x, s). Relative error <= ~1e-14 against the oracle on quoted-price
/// grids.
double price_expanded(double x, double s);

/// a(h) = 1 + h sqrt(pi/2) erfcx(-h/sqrt2) = 1 + h Phi(h)/phi(h).
/// Continued-fraction form for h <= -10 where the direct expression cancels.
double coeff_a(double h);

/// Sqrt-forward vega nu(x,s) = exp(-(h^2+t^2)/2) / sqrt(2 pi); exactly
/// d(beta)/ds.
double vega_sqrtfwd(double x, double s);

// Dispatcher constants (the expanded evaluator's region thresholds).
inline constexpr double kRegionEta = -13.0;
inline constexpr double kRegionTau = 0.21022410381342863;  // 2 eps^{1/16} = 2^{-9/4}

// Region evaluators at a fixed point, used by the seam-continuity tests.
double region_i_beta(double x, double s);
double region_ii_beta(double x, double s);
double cody_beta(double x, double s);

}  // namespace ivsolve::pricing
