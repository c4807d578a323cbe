// SPDX-License-Identifier: MIT
#include "ivsolve/pricing.hpp"

#include <cmath>

#include "ivsolve/specfun.hpp"

namespace ivsolve::pricing {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kTwoInvSqrt2Pi = 0.79788456080286535588;
constexpr double kSqrtPiOver2 = 1.2533141373155002512;
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kLn2Pi = 1.8378770664093454836;

// e^{-(h^2+t^2)/2} with the squares and sum carried through error-free
// transformations; the residual enters as a first-order correction. Keeps the
// expanded evaluator at reference accuracy where (h^2+t^2)/2 is large.
double exp_neg_half_sumsq(double h, double t) {
    const double h2 = h * h;
    const double eh = std::fma(h, h, -h2);
    const double t2 = t * t;
    const double et = std::fma(t, t, -t2);
    const double s = h2 + t2;
    const double z = s - h2;
    const double es = (h2 - (s - z)) + (t2 - z);
    const double w = 0.5 * s;
    const double dw = 0.5 * (eh + et + es);
    return std::exp(-w) * (1.0 - dw);
}

// ---------------------------------------------------------------------------
// Region I: asymptotic expansion of the scaled Mills-ratio difference.
//
//   beta/nu = (t/r) * Omega(q, e),   r = (h+t)(h-t),  e = (t/h)^2, q = (h/r)^2,
//
// where Omega = sum_n d_n q^n ce_n(e) with d_n = 2(-1)^n (2n-1)!! and
// ce_n(e) = sum_j C(2n+1, 2j+1) e^j. Derived from Phi(z)/phi(z) ~
// sum (-1)^{k+1}(2k-1)!!/z^{2k+1}; terms are retained until the next term
// falls below 2^-53 of the partial sum (18 terms cover the whole region).
// ---------------------------------------------------------------------------

constexpr int kOmegaMaxN = 17;

constexpr double kOmegaD[kOmegaMaxN + 1] = {
    2.0, -2.0, 6.0, -30.0, 210.0, -1890.0, 20790.0, -270270.0, 4054050.0, -68918850.0,
    1309458150.0, -27498621150.0, 632468286450.0, -15811707161250.0, 426916093353750.0,
    -12380566707258750.0, 383797567925021250.0, -12665319741525701250.0};

// ce_n[j] = C(2n+1, 2j+1); all entries below 2^53, exact as doubles.
constexpr double kOmegaCe[kOmegaMaxN + 1][kOmegaMaxN + 1] = {
    {1},
    {3, 1},
    {5, 10, 1},
    {7, 35, 21, 1},
    {9, 84, 126, 36, 1},
    {11, 165, 462, 330, 55, 1},
    {13, 286, 1287, 1716, 715, 78, 1},
    {15, 455, 3003, 6435, 5005, 1365, 105, 1},
    {17, 680, 6188, 19448, 24310, 12376, 2380, 136, 1},
    {19, 969, 11628, 50388, 92378, 75582, 27132, 3876, 171, 1},
    {21, 1330, 20349, 116280, 293930, 352716, 203490, 54264, 5985, 210, 1},
    {23, 1771, 33649, 245157, 817190, 1352078, 1144066, 490314, 100947, 8855, 253, 1},
    {25, 2300, 53130, 480700, 2042975, 4457400, 5200300, 3268760, 1081575, 177100, 12650, 300, 1},
    {27, 2925, 80730, 888030, 4686825, 13037895, 20058300, 17383860, 8436285, 2220075, 296010,
     17550, 351, 1},
    {29, 3654, 118755, 1560780, 10015005, 34597290, 67863915, 77558760, 51895935, 20030010,
     4292145, 475020, 23751, 406, 1},
    {31, 4495, 169911, 2629575, 20160075, 84672315, 206253075, 300540195, 265182525, 141120525,
     44352165, 7888725, 736281, 31465, 465, 1},
    {33, 5456, 237336, 4272048, 38567100, 193536720, 573166440, 1037158320, 1166803110, 818809200,
     354817320, 92561040, 13884156, 1107568, 40920, 528, 1},
    {35, 6545, 324632, 6724520, 70607460, 417225900, 1476337800, 3247943160, 4537567650,
     4059928950, 2319959400, 834451800, 183579396, 23535820, 1623160, 52360, 595, 1}};

double omega_series(double q, double e) {
    double sum = 0.0;
    double qn = 1.0;
    double prev = HUGE_VAL;
    for (int n = 0; n <= kOmegaMaxN; ++n) {
        const double* c = kOmegaCe[n];
        double ce = c[n];
        for (int j = n - 1; j >= 0; --j) ce = ce * e + c[j];
        const double term = kOmegaD[n] * qn * ce;
        sum += term;
        const double mag = std::fabs(term);
        if (mag <= std::fabs(sum) * 0x1p-54 || (n > 3 && mag > prev)) break;
        prev = mag;
        qn *= q;
    }
    return sum;
}

// Small-t expansion coefficients b0..b6 of R_II(h,t) = t sum b_j t^{2j}.
double region_ii_poly(double h, double t) {
    const double a = coeff_a(h);
    const double h2 = h * h;
    const double w = t * t;
    const double b0 = 2.0 * a;
    const double b1 = (-1.0 + a * (3.0 + h2)) / 3.0;
    const double b2 = (-7.0 - h2 + a * (15.0 + h2 * (10.0 + h2))) / 60.0;
    const double b3 =
        (-57.0 - h2 * (18.0 + h2) + a * (105.0 + h2 * (105.0 + h2 * (21.0 + h2)))) / 2520.0;
    const double b4 = (-561.0 - h2 * (285.0 + h2 * (33.0 + h2)) +
                       a * (945.0 + h2 * (1260.0 + h2 * (378.0 + h2 * (36.0 + h2))))) /
                      181440.0;
    const double b5 = (-6555.0 - h2 * (4680.0 + h2 * (840.0 + h2 * (52.0 + h2))) +
                       a * (10395.0 + h2 * (17325.0 + h2 * (6930.0 +
                                                            h2 * (990.0 + h2 * (55.0 + h2)))))) /
                      19958400.0;
    const double b6 =
        (-89055.0 - h2 * (82845.0 + h2 * (20370.0 + h2 * (1926.0 + h2 * (75.0 + h2)))) +
         a * (135135.0 +
              h2 * (270270.0 +
                    h2 * (135135.0 + h2 * (25740.0 + h2 * (2145.0 + h2 * (78.0 + h2))))))) /
        3113510400.0;
    return t * (b0 + w * (b1 + w * (b2 + w * (b3 + w * (b4 + w * (b5 + w * b6))))));
}

}  // namespace

double price_cdf(double x, double v) {
    const double h = x / v;
    const double t = 0.5 * v;
    const double b = specfun::norm_cdf(h + t) - std::exp(-x) * specfun::norm_cdf(h - t);
    return std::fmin(std::fmax(b, 0.0), 1.0);
}

TailObjectiveEval log_price_lower(double x, double v) {
    TailObjectiveEval ev;
    ev.branch = Branch::Lower;
    const double h = x / v;
    const double t = 0.5 * v;
    ev.coords = {h, t};
    ev.n_plus = specfun::erfcx(-(h + t) * kInvSqrt2);
    ev.n_minus = specfun::erfcx(-(h - t) * kInvSqrt2);
    const double diff = ev.n_plus - ev.n_minus;
    if (!(diff > 0.0)) {
        ev.degenerate = true;
        ev.log_value = -HUGE_VAL;
        return ev;
    }
    ev.log_value = -0.5 * (h * h + t * t) - kLn2 - 0.5 * x + std::log(diff);
    return ev;
}

TailObjectiveEval log_gap_upper(double x, double v) {
    TailObjectiveEval ev;
    ev.branch = Branch::Upper;
    const double h = x / v;
    const double t = 0.5 * v;
    ev.coords = {h, t};
    ev.n_plus = specfun::erfcx((h + t) * kInvSqrt2);
    ev.n_minus = specfun::erfcx(-(h - t) * kInvSqrt2);
    const double d1 = h + t;
    ev.log_value = -0.5 * d1 * d1 - kLn2 + std::log(ev.n_plus + ev.n_minus);
    return ev;
}

double price_erfcx_log(double x, double v) {
    const TailObjectiveEval ev = log_price_lower(x, v);
    if (ev.degenerate) return 0.0;
    return std::exp(ev.log_value);
}

RegionTag region_dispatch(double x, double s) {
    if (x < kRegionEta * s && s * (0.5 * s - (kRegionTau + 0.5 + kRegionEta)) + x < 0.0)
        return RegionTag::RegionI;
    if (s * (s - 2.0 * kRegionTau) - x / kRegionEta < 0.0) return RegionTag::RegionII;
    return RegionTag::Cody;
}

double region_i_beta(double x, double s) {
    const double h = x / s;
    const double t = 0.5 * s;
    const double r = (h + t) * (h - t);
    const double e = (t / h) * (t / h);
    const double q = (h / r) * (h / r);
    const double omega = omega_series(q, e);
    const double w = 0.5 * (h * h + t * t);
    if (w > 700.0)  // nu would be subnormal; assemble in log space
        return std::exp(-w - 0.5 * kLn2Pi + std::log((t / r) * omega));
    return exp_neg_half_sumsq(h, t) * kInvSqrt2Pi * (t / r) * omega;
}

double region_ii_beta(double x, double s) {
    const double h = x == 0.0 ? 0.0 : x / s;
    const double t = 0.5 * s;
    return exp_neg_half_sumsq(h, t) * kInvSqrt2Pi * region_ii_poly(h, t);
}

double cody_beta(double x, double s) {
    const double h = x == 0.0 ? 0.0 : x / s;
    const double t = 0.5 * s;
    const double rho = 0.46875;
    const double q1 = -(h + t) * kInvSqrt2;
    const double q2 = -(h - t) * kInvSqrt2;
    double two_b;
    if (q1 < rho) {
        if (q2 < rho)
            two_b = std::exp(0.5 * x) * specfun::erfc(q1) - std::exp(-0.5 * x) * specfun::erfc(q2);
        else
            two_b = std::exp(0.5 * x) * specfun::erfc(q1) -
                    exp_neg_half_sumsq(h, t) * specfun::erfcx(q2);
    } else {
        if (q2 < rho)
            two_b = exp_neg_half_sumsq(h, t) * specfun::erfcx(q1) -
                    std::exp(-0.5 * x) * specfun::erfc(q2);
        else
            two_b = exp_neg_half_sumsq(h, t) * (specfun::erfcx(q1) - specfun::erfcx(q2));
    }
    return std::fmax(0.5 * two_b, 0.0);
}

double price_expanded(double x, double s) {
    switch (region_dispatch(x, s)) {
        case RegionTag::RegionI: return region_i_beta(x, s);
        case RegionTag::RegionII: return region_ii_beta(x, s);
        default: return cody_beta(x, s);
    }
}

double coeff_a(double h) {
    if (h > -10.0) return 1.0 + h * kSqrtPiOver2 * specfun::erfcx(-h * kInvSqrt2);
    // Laplace continued fraction: with m = -h, the Mills ratio is
    // M = 1/(m + u), u = 1/(m + 2/(m + 3/(m + ...))), and
    // a = 1 - m M = u/(m + u) -- no cancellation.
    const double m = -h;
    const int depth = 14 + static_cast<int>(4000.0 / (m * m));
    double w = 0.0;
    for (int j = depth; j >= 2; --j) w = j / (m + w);
    const double u = 1.0 / (m + w);
    return u / (m + u);
}

double vega_sqrtfwd(double x, double s) {
    const double h = x == 0.0 ? 0.0 : x / s;
    const double t = 0.5 * s;
    return exp_neg_half_sumsq(h, t) * kInvSqrt2Pi;
}

}  // namespace ivsolve::pricing
