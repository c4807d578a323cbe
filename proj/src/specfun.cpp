// SPDX-License-Identifier: MIT
#include "ivsolve/specfun.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace ivsolve::specfun {

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;   // 1/sqrt(pi)
constexpr double kTwoInvSqrtPi = 1.1283791670955125739; // 2/sqrt(pi)
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrtTwoPi = 2.5066282746310005024;
constexpr double kSqrtPiOver2 = 1.2533141373155002512;
constexpr double kLn2 = 0.69314718055994530942;

// 1/sqrt(2) as a hi/lo pair; the lo part recovers the argument rounding of
// z/sqrt(2) so the cdf can correct it to first order.
constexpr double kInvSqrt2Hi = 0.70710678118654752440;
constexpr double kInvSqrt2Lo = -4.8336466567264567185e-17;

// Horner with error-free transformations (TwoProd/TwoSum). Brings the
// evaluation noise of the rational kernels to ~1 ulp.
template <int N>
double horner_comp(const double (&c)[N], double x) {
    double s = c[N - 1];
    double e = 0.0;
    for (int i = N - 2; i >= 0; --i) {
        const double p = s * x;
        const double pe = std::fma(s, x, -p);
        const double t = p + c[i];
        const double z = t - p;
        const double te = (p - (t - z)) + (c[i] - z);
        s = t;
        e = e * x + (pe + te);
    }
    return s + e;
}

// Rational kernels after W. J. Cody, "Rational Chebyshev approximations for
// the error function", Math. Comp. 23 (1969); coefficients carry ~18
// significant decimal digits. Stored in ascending Horner order.
constexpr double kErfNum[5] = {3209.37758913846947, 377.485237685302021, 113.864154151050156,
                               3.1611237438705656, 0.185777706184603153};
constexpr double kErfDen[5] = {2844.23683343917062, 1282.61652607737228, 244.024637934444173,
                               23.6012909523441209, 1.0};
constexpr double kMidNum[9] = {1230.33935479799725, 2051.07837782607147, 1712.04761263407058,
                               881.95222124176909,  298.635138197400131, 66.1191906371416295,
                               8.88314979438837594, 0.564188496988670089, 2.15311535474403846e-8};
constexpr double kMidDen[9] = {1230.33935480374942, 3439.36767414372164, 4362.61909014324716,
                               3290.79923573345963, 1621.38957456669019, 537.181101862009858,
                               117.693950891312499, 15.7449261107098347, 1.0};

// Asymptotic tail 1/(z sqrt(pi)) * sum (-1)^k (2k-1)!! u^k, u = 1/(2 z^2);
// truncation below 1e-17 for z >= 8 with 20 terms.
constexpr double kAsym[21] = {1.0,
                              -1.0,
                              3.0,
                              -15.0,
                              105.0,
                              -945.0,
                              10395.0,
                              -135135.0,
                              2027025.0,
                              -34459425.0,
                              654729075.0,
                              -13749310575.0,
                              316234143225.0,
                              -7905853580625.0,
                              213458046676875.0,
                              -6190283353629375.0,
                              191898783962510625.0,
                              -6332659870762850625.0,
                              2.2164309547669976e+20,
                              -8.2007945326378915e+21,
                              3.1983098677287777e+23};

constexpr double kErfcxXNeg = -26.628;  // below this, 2 e^{z^2} overflows
constexpr double kErfcBig = 26.543;     // erfc underflows to 0 above this

// erf(z) for |z| <= 0.46875.
double erf_small(double z) {
    const double y = std::fabs(z);
    double ysq = 0.0;
    if (y > 1.11e-16) ysq = y * y;
    return z * horner_comp(kErfNum, ysq) / horner_comp(kErfDen, ysq);
}

// e^{+-y^2} with the argument split so the large exponential carries an exact
// argument: y_hi = trunc(16y)/16 and y_hi^2 are exact for y < 30.
double exp_minus_ysq(double y) {
    const double yhi = std::trunc(y * 16.0) / 16.0;
    const double del = (y - yhi) * (y + yhi);
    return std::exp(-yhi * yhi) * std::exp(-del);
}

double exp_ysq(double y) {
    const double yhi = std::trunc(y * 16.0) / 16.0;
    const double del = (y - yhi) * (y + yhi);
    return std::exp(yhi * yhi) * std::exp(del);
}

// erfcx(y) for 0.46875 <= y <= 4 (rational, no exponential).
double erfcx_mid(double y) {
    return horner_comp(kMidNum, y) / horner_comp(kMidDen, y);
}

// erfcx(y) for 4 < y < 8 via the Laplace continued fraction of the Mills
// ratio, M(m) = 1/(m + 1/(m + 2/(m + 3/(m + ...)))), m = sqrt(2) y,
// evaluated backward. Depth chosen so truncation is below 1e-17 over the
// band (validated against the multiprecision oracle).
double erfcx_tail_cf(double y) {
    const double m = kSqrt2 * y;
    const int depth = 12 + static_cast<int>(1600.0 / (m * m));
    double w = 0.0;
    for (int j = depth; j >= 2; --j) w = (j - 1) / (m + w);
    return kSqrt2 * kInvSqrtPi / (m + w);
}

double erfcx_tail_asym(double y) {
    const double u = 0.5 / (y * y);
    return horner_comp(kAsym, u) / (y * kSqrt2 * kSqrtPiOver2);
}

double erfcx_positive(double y) {
    if (y <= 0.46875) return exp_ysq(y) * (1.0 - erf_small(y));
    if (y <= kSpecFunConfig.erfcx_switch_point) return erfcx_mid(y);
    if (y < 8.0) return erfcx_tail_cf(y);
    return erfcx_tail_asym(y);
}

double erfc_positive(double y) {
    if (y <= 0.46875) return 1.0 - erf_small(y);
    if (y >= kErfcBig) return 0.0;
    return exp_minus_ysq(y) * erfcx_positive(y);
}

// Acklam's rational approximation to the inverse normal cdf (central region
// and tails in sqrt(-2 ln p)), good to ~1.15e-9 before refinement.
constexpr double kAckA[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kAckB[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
constexpr double kAckC[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kAckD[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};

double acklam_central(double p) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((kAckA[0] * r + kAckA[1]) * r + kAckA[2]) * r + kAckA[3]) * r + kAckA[4]) * r +
            kAckA[5]) *
           q /
           (((((kAckB[0] * r + kAckB[1]) * r + kAckB[2]) * r + kAckB[3]) * r + kAckB[4]) * r + 1.0);
}

double acklam_lower_tail(double p) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((kAckC[0] * q + kAckC[1]) * q + kAckC[2]) * q + kAckC[3]) * q + kAckC[4]) * q +
            kAckC[5]) /
           ((((kAckD[0] * q + kAckD[1]) * q + kAckD[2]) * q + kAckD[3]) * q + 1.0);
}

// One Halley step on Phi(z) - p = 0; valid where exp(z^2/2) stays in range.
double refine_direct(double z, double p) {
    const double e = norm_cdf(z) - p;
    const double u = e * kSqrtTwoPi * std::exp(0.5 * z * z);
    return z - u / (1.0 + 0.5 * z * u);
}

// Two Newton steps on ln Phi(z) = ln p for the deep lower tail; expressed
// through erfcx so nothing underflows down to p = DBL_TRUE_MIN.
double refine_log_lower(double z, double ln_p) {
    for (int i = 0; i < 2; ++i) {
        const double ex = erfcx(-z * kInvSqrt2Hi);
        const double ln_phi = -0.5 * z * z - kLn2 + std::log(ex);
        z -= (ln_phi - ln_p) * kSqrtPiOver2 * ex;
    }
    return z;
}

double inv_norm_cdf_impl(double p) {
    // p in (0, 0.5]
    if (p >= kSpecFunConfig.invcdf_tail_cut) return refine_direct(acklam_central(p), p);
    const double z = acklam_lower_tail(p);
    if (p >= 1e-10) return refine_direct(z, p);
    return refine_log_lower(z, std::log(p));
}

}  // namespace

double erf(double z) {
    const double y = std::fabs(z);
    if (y <= 0.46875) return erf_small(z);
    const double e = erfc_positive(y);
    return z > 0 ? 1.0 - e : e - 1.0;
}

double erfc(double z) {
    if (z >= 0) return erfc_positive(z);
    return 2.0 - erfc_positive(-z);
}

double erfcx(double z) {
    if (z >= 0) return erfcx_positive(z);
    if (z < kErfcxXNeg) return HUGE_VAL;
    const double y = -z;
    return exp_ysq(y) * 2.0 - erfcx_positive(y);
}

double norm_pdf(double z) {
    return std::exp(-0.5 * z * z) / kSqrtTwoPi;
}

double norm_cdf(double z) {
    // y + r = |z|/sqrt(2) to ~2^-106; the r-term removes the argument
    // rounding of the erfc call, which otherwise dominates the cdf error.
    const double a = std::fabs(z);
    const double y = a * kInvSqrt2Hi;
    const double r = std::fma(a, kInvSqrt2Hi, -y) + a * kInvSqrt2Lo;
    double phi;  // Phi(-|z|)
    if (y <= 0.46875) {
        phi = 0.5 * (1.0 - erf_small(y)) - r * kInvSqrtPi * std::exp(-y * y);
    } else if (y >= kErfcBig) {
        phi = 0.0;
    } else {
        phi = 0.5 * exp_minus_ysq(y) * (erfcx_positive(y) - r * kTwoInvSqrtPi);
    }
    return z <= 0 ? phi : 1.0 - phi;
}

double inv_norm_cdf(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("inv_norm_cdf: p outside (0,1)");
    if (p == 0.5) return 0.0;
    if (p > 0.5) return -inv_norm_cdf_impl(1.0 - p);
    return inv_norm_cdf_impl(p);
}

}  // namespace ivsolve::specfun
