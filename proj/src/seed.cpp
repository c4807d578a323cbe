// SPDX-License-Identifier: MIT
#include "ivsolve/seed.hpp"

#include <cfloat>
#include <cmath>

#include "ivsolve/specfun.hpp"

namespace ivsolve::seed {

namespace {

constexpr double kSqrtTwoPi = 2.5066282746310005024;
constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kPi = 3.1415926535897932385;
constexpr double kSeedFloor = 1e-10;
constexpr double kP3Min = DBL_MIN;                 // smallest normal probability
constexpr double kP3Max = 1.0 - 0x1p-53;           // nextDown(1)

SeedOutcome with_floor(SeedOutcome s) {
    s.v0 = std::fmax(s.v0, kSeedFloor);
    return s;
}

}  // namespace

SeedOutcome repair_seed(double x, double c) {
    SeedOutcome s;
    if (c < 1e-4 && -x < 0.01) {
        s.v0 = std::sqrt(x * x + kTwoPi * c * c);
        s.source = SeedSource::RepairNearAtm;
        return with_floor(s);
    }
    const double d = std::sqrt(std::fmax(-2.0 * std::log(c) - std::log(kTwoPi), 0.0));
    const double disc = d * d - 2.0 * x;
    if (std::isfinite(disc) && disc > 0.0) {
        const double den = d + std::sqrt(disc);
        const double v0 = -2.0 * x / den;
        if (std::isfinite(v0) && v0 > 0.0) {
            s.v0 = v0;
            s.source = SeedSource::RepairOtmAsymptotic;
            return with_floor(s);
        }
    }
    s.v0 = std::sqrt(2.0 * std::fabs(x));
    s.source = SeedSource::RepairTerminal;
    return with_floor(s);
}

SeedOutcome choi_l3(double x, double c) {
    const double k = -x;
    SeedOutcome s;

    if (k == 0.0) {
        if (c < 1e-4) {
            s.v0 = kSqrtTwoPi * c * (1.0 + kPi * c * c / 12.0);
            s.source = SeedSource::AtmSeries;
        } else {
            s.v0 = 2.0 * specfun::inv_norm_cdf(0.5 * (1.0 + c));
            s.source = SeedSource::AtmInverse;
        }
        if (!std::isfinite(s.v0) || s.v0 <= 0.0) return repair_seed(x, c);
        return with_floor(s);
    }

    // p3 = c(c+E)/(2c+E-1); the denominator is formed through expm1 so the
    // small-k cancellation of E-1 does not contaminate the probability.
    const double e_k = std::exp(k);
    const double denom = 2.0 * c + std::expm1(k);
    const double p3 = c * (c + e_k) / denom;
    if (!(denom > 0.0) || !std::isfinite(p3) || p3 <= 0.0) return repair_seed(x, c);

    const double p3c = std::fmin(std::fmax(p3, kP3Min), kP3Max);
    const double z3 = specfun::inv_norm_cdf(p3c);
    const double root = std::sqrt(z3 * z3 + 2.0 * k);
    const double v0 = z3 >= 0.0 ? z3 + root : 2.0 * k / (root - z3);
    if (!std::isfinite(v0) || v0 <= 0.0) return repair_seed(x, c);

    s.v0 = v0;
    s.p3 = p3c;
    s.z3 = z3;
    s.source = SeedSource::L3;
    return with_floor(s);
}

}  // namespace ivsolve::seed
