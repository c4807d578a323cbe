// SPDX-License-Identifier: MIT
#pragma once

// Top-level solver: input-domain branch map, microscopic Bachelier-limit
// branch, tiny near-ATM guard, and the seed -> refine -> optional polish
// assembly. Pure functions, no global state.

#include <array>
#include <cstdint>

#include "ivsolve/normalize.hpp"
#include "ivsolve/polish.hpp"

namespace ivsolve {

enum class BranchTag : std::uint8_t {
    TinyNearAtm,
    MicroscopicDeepTail,
    MicroscopicRational,
    MicroscopicZeroLimit,
    L3Seed,
    SeedRepaired,
    LowerChebyshev,
    UpperHalley,
    Polished,
};

const char* branch_tag_name(BranchTag tag);

struct BranchPath {
    std::array<BranchTag, 4> tags{};
    int count = 0;

    void push(BranchTag t) {
        if (count < 4) tags[count++] = t;
    }
    bool contains(BranchTag t) const {
        for (int i = 0; i < count; ++i)
            if (tags[i] == t) return true;
        return false;
    }
    bool operator==(const BranchPath& o) const {
        if (count != o.count) return false;
        for (int i = 0; i < count; ++i)
            if (tags[i] != o.tags[i]) return false;
        return true;
    }
};

struct SolveResult {
    double total_vol = 0.0;    // v = sigma sqrt(T), >= 0 and finite
    double implied_vol = 0.0;  // sigma = v / sqrt(T)
    BranchPath branch_path;
    std::array<double, 4> trace{};  // per-iteration v (seeded branches)
    int trace_len = 0;
};

struct SolverConfig {
    bool polish = false;
    polish::PolishCutoff polish_cutoff = polish::PolishCutoff::Half;
};

/// Solve for total volatility from normalized inputs (x <= 0, c in (0,1)).
/// Total: returns finite non-negative total_vol for every admissible input.
SolveResult solve_normalized(double x, double c, double expiry, const SolverConfig& cfg = {});

/// Library entry point on normalized inputs; expiry 1 (total volatility is
/// the implied volatility). Throws ArbitrageViolation outside the open band.
double implied_total_vol(double x, double c, bool polish = false);

/// Library entry point on raw quotes.
SolveResult implied_vol_from_quote(const RawQuote& quote, bool polish = false);

namespace detail {

struct MicroOutcome {
    double v = 0.0;
    BranchTag tag = BranchTag::MicroscopicZeroLimit;
};

/// Microscopic Bachelier-limit branch (c <= 1e-6, |x| <= 1e-8): deep-tail
/// Mills equation, or rational Bachelier seed plus two Newton corrections on
/// the local Black expansion, or the zero-volatility limit.
MicroOutcome microscopic_bachelier(double x, double c);

/// Bachelier (normal model) total volatility solving
/// v phi(m/v) - m Phi(-m/v) = beta to <= 1e-13 relative.
double bachelier_iv(double beta, double m);

/// Root a of the scaled Mills-ratio deep-tail equation
/// ln(beta/m) = -a^2/2 - ln(2 pi)/2 + ln(1/a - sqrt(pi/2) erfcx(a/sqrt2));
/// returns v = m/a, or 0 when the candidate fails the m/v > 4 acceptance.
double deep_tail_solve(double beta, double m);

}  // namespace detail

}  // namespace ivsolve
