// SPDX-License-Identifier: MIT
#include "ivsolve/solver.hpp"

#include <cmath>

#include "ivsolve/pricing.hpp"
#include "ivsolve/refine.hpp"
#include "ivsolve/seed.hpp"
#include "ivsolve/specfun.hpp"

namespace ivsolve {

namespace {

constexpr double kSqrtTwoPi = 2.5066282746310005024;
constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kLn2Pi = 1.8378770664093454836;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrtPiOver2 = 1.2533141373155002512;

// Microscopic branch entry: c <= 1e-6 with one part in 1e12 tolerance,
// |x| <= 1e-8.
constexpr double kMicroCMax = 1.000000000001e-06;
constexpr double kMicroXMin = -1e-8;

// Tiny near-ATM guard: c <= 5e-4, |x| < 0.01, and price large enough that
// the root sits at or above |x| (c >= ~0.0686|x| puts the root at |x|); the
// sqrt(x^2 + 2 pi c^2) seed is only meaningful there. Below that band the L3
// seed is both valid and lower-sided, so the guard defers to it.
constexpr double kTinyCMax = 5e-4;
constexpr double kTinyXAbsMax = 0.01;
constexpr double kTinyCOverXMin = 0.07;

// f(a) = -a^2/2 - ln(2 pi)/2 - ln a + ln A(a) with A(a) = 1 - a Mills(a);
// strictly decreasing, and f'(a) = -1/(a A(a)) exactly.
double tail_logprice_of_a(double a) {
    const double cap_a = pricing::coeff_a(-a);
    return -0.5 * a * a - 0.5 * kLn2Pi - std::log(a) + std::log(cap_a);
}

// Safeguarded Newton for f(a) = target on [a_lo, a_hi] (f decreasing).
double solve_tail_a(double target, double a_init, double a_lo, double a_hi) {
    double a = std::fmin(std::fmax(a_init, a_lo), a_hi);
    for (int it = 0; it < 80; ++it) {
        const double cap_a = pricing::coeff_a(-a);
        const double f = -0.5 * a * a - 0.5 * kLn2Pi - std::log(a) + std::log(cap_a);
        if (f > target)
            a_lo = a;
        else
            a_hi = a;
        double a_next = a + (f - target) * a * cap_a;
        if (!(a_next > a_lo) || !(a_next < a_hi)) a_next = 0.5 * (a_lo + a_hi);
        const double diff = std::fabs(a_next - a);
        a = a_next;
        if (diff <= 2e-16 * a) break;
    }
    return a;
}

// Bachelier price v phi(a) - m Phi(-a) = phi(a) (v - m Mills(a)), and the
// local Black correction I0 - I2/8 + I4/128 used by the microscopic branch.
struct BachelierEval {
    double price = 0.0;
    double vega = 0.0;  // phi(a), the Bachelier vega
    double a = 0.0;
    double phi_a = 0.0;
};

BachelierEval bachelier_price(double m, double v) {
    BachelierEval ev;
    ev.a = m / v;
    ev.phi_a = std::exp(-0.5 * ev.a * ev.a) / kSqrtTwoPi;
    const double mills = kSqrtPiOver2 * specfun::erfcx(ev.a * kInvSqrt2);
    ev.price = ev.phi_a * (v - m * mills);
    ev.vega = ev.phi_a;
    return ev;
}

}  // namespace

namespace detail {

double bachelier_iv(double beta, double m) {
    if (m == 0.0) return kSqrtTwoPi * beta;

    // ATM-scaled transform; exact at m = 0 and a lower bound in general.
    double v = kSqrtTwoPi * beta;
    const double a0 = m / v;
    if (a0 > 0.5) {
        // Away from the central zone the direct iteration can start outside
        // its basin; seed from the log-space tail equation instead.
        const double target = std::log(beta / m);
        double a_hi = std::fmax(2.0 * std::sqrt(std::fmax(-2.0 * target - kLn2Pi, 1.0)), 8.0);
        while (tail_logprice_of_a(a_hi) > target && a_hi < 1e8) a_hi *= 2.0;
        const double a_init = std::sqrt(std::fmax(-2.0 * target - kLn2Pi, 0.25));
        const double a = solve_tail_a(target, a_init, 1e-10, a_hi);
        v = m / a;
    }

    // Two Halley steps on the exact Bachelier price.
    for (int it = 0; it < 2; ++it) {
        const auto ev = bachelier_price(m, v);
        const double f = ev.price - beta;
        const double eta = -f / ev.vega;
        const double lambda = f * (ev.a * ev.a / v) / ev.vega;
        double v_next = v + eta / (1.0 - 0.5 * lambda);
        if (!std::isfinite(v_next) || v_next <= 0.0) v_next = v + eta;
        if (!std::isfinite(v_next) || v_next <= 0.0) v_next = v;
        v = v_next;
    }
    return v;
}

double deep_tail_solve(double beta, double m) {
    const double target = std::log(beta / m);
    if (!(tail_logprice_of_a(4.0) > target)) return 0.0;  // root at or below 4: reject
    const double a_init = std::sqrt(std::fmax(-2.0 * target - kLn2Pi, 16.0));
    double a_hi = std::fmax(2.0 * a_init, 8.0);
    while (tail_logprice_of_a(a_hi) > target && a_hi < 1e8) a_hi *= 2.0;
    const double a = solve_tail_a(target, a_init, 4.0, a_hi);
    if (!(a > 4.0)) return 0.0;
    const double v = m / a;
    return std::isfinite(v) && v > 0.0 ? v : 0.0;
}

MicroOutcome microscopic_bachelier(double x, double c) {
    const double beta = c * std::exp(0.5 * x);
    const double m = -x;

    if (m > 0.0 && std::log(m / beta) > 20.0) {
        const double v = deep_tail_solve(beta, m);
        if (v > 0.0) return {v, BranchTag::MicroscopicDeepTail};
    }

    double v = bachelier_iv(beta, m);
    // Two Newton corrections on the local Black expansion
    // beta_Bl = I0 - I2/8 + I4/128 with the exact sqrt-forward vega.
    for (int it = 0; it < 2 && std::isfinite(v) && v > 0.0; ++it) {
        const auto ev = bachelier_price(m, v);
        const double i0 = ev.price;
        const double i2 = (v * v * v * ev.phi_a - m * m * i0) / 3.0;
        const double i4 = (v * v * v * v * v * ev.phi_a - m * m * i2) / 5.0;
        const double beta_bl = i0 - i2 / 8.0 + i4 / 128.0;
        const double vega = ev.phi_a * std::exp(-v * v / 8.0);
        v += (beta - beta_bl) / vega;
    }
    if (std::isfinite(v) && v > 0.0) return {v, BranchTag::MicroscopicRational};
    return {0.0, BranchTag::MicroscopicZeroLimit};
}

}  // namespace detail

const char* branch_tag_name(BranchTag tag) {
    switch (tag) {
        case BranchTag::TinyNearAtm: return "tiny_near_atm";
        case BranchTag::MicroscopicDeepTail: return "microscopic_deep_tail";
        case BranchTag::MicroscopicRational: return "microscopic_rational";
        case BranchTag::MicroscopicZeroLimit: return "microscopic_zero_limit";
        case BranchTag::L3Seed: return "l3_seed";
        case BranchTag::SeedRepaired: return "seed_repaired";
        case BranchTag::LowerChebyshev: return "lower_chebyshev";
        case BranchTag::UpperHalley: return "upper_halley";
        case BranchTag::Polished: return "polished";
    }
    return "?";
}

SolveResult solve_normalized(double x, double c, double expiry, const SolverConfig& cfg) {
    SolveResult res;

    // (1) microscopic Bachelier-limit branch, tested first (narrower than the
    // tiny near-ATM guard).
    if (c <= kMicroCMax && x >= kMicroXMin) {
        const auto micro = detail::microscopic_bachelier(x, c);
        res.total_vol = micro.v;
        res.implied_vol = micro.v / std::sqrt(expiry);
        res.branch_path.push(micro.tag);
        res.trace[0] = micro.v;
        res.trace_len = 1;
        return res;
    }

    // (2) tiny near-ATM seed branch.
    double v0;
    if (c <= kTinyCMax && -x < kTinyXAbsMax && c >= kTinyCOverXMin * (-x)) {
        v0 = std::sqrt(x * x + kTwoPi * c * c);
        res.branch_path.push(BranchTag::TinyNearAtm);
    } else {
        // (3) Choi L3 seed, repaired only when invalid.
        const auto sd = seed::choi_l3(x, c);
        v0 = sd.v0;
        const bool repaired = sd.source == seed::SeedSource::RepairNearAtm ||
                              sd.source == seed::SeedSource::RepairOtmAsymptotic ||
                              sd.source == seed::SeedSource::RepairTerminal;
        res.branch_path.push(repaired ? BranchTag::SeedRepaired : BranchTag::L3Seed);
    }

    const auto tr = refine::refine3(x, c, v0);
    for (int i = 0; i < 4; ++i) res.trace[i] = tr.v[i];
    res.trace_len = 4;

    if (tr.degenerate) {
        // Objective collapsed (total erfcx cancellation); the Bachelier-limit
        // machinery is the usable evaluator in that zone.
        const auto micro = detail::microscopic_bachelier(x, c);
        const double v = micro.v > 0.0 ? micro.v : tr.v[3];
        res.total_vol = v;
        res.implied_vol = v / std::sqrt(expiry);
        res.branch_path.push(micro.tag);
        return res;
    }

    res.branch_path.push(tr.branch == pricing::Branch::Lower ? BranchTag::LowerChebyshev
                                                             : BranchTag::UpperHalley);
    double v = tr.v[3];

    // (4) optional reference-price polish on the lower half only.
    if (cfg.polish && c <= polish::cutoff_value(cfg.polish_cutoff)) {
        const auto rep = polish::jackel_newton_polish(x, v, c);
        if (rep.applied) {
            v = rep.s_after;
            res.branch_path.push(BranchTag::Polished);
        }
    }

    res.total_vol = v;
    res.implied_vol = v / std::sqrt(expiry);
    return res;
}

double implied_total_vol(double x, double c, bool polish_flag) {
    if (!std::isfinite(x) || x > 0.0) throw InvalidInput("implied_total_vol: x must be finite and <= 0");
    if (!(c > 0.0) || !(c < 1.0)) throw ArbitrageViolation("implied_total_vol: c outside (0,1)");
    SolverConfig cfg;
    cfg.polish = polish_flag;
    return solve_normalized(x, c, 1.0, cfg).total_vol;
}

SolveResult implied_vol_from_quote(const RawQuote& quote, bool polish_flag) {
    const NormalizedQuote n = normalize(quote);
    SolverConfig cfg;
    cfg.polish = polish_flag;
    return solve_normalized(n.x, n.c, n.expiry, cfg);
}

}  // namespace ivsolve
