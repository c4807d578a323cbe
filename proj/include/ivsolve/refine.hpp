// SPDX-License-Identifier: MIT
#pragma once

// Derivative ratios of the two tail-log objectives and the third-order
// one-step maps: Euler-Chebyshev on ln c, Halley on ln(1-c). The production
// driver applies exactly three steps on the branch selected by c <= 1/2.

#include <array>

#include "ivsolve/pricing.hpp"

namespace ivsolve::refine {

struct StepDiagnostics {
    double eta = 0.0;     // Newton displacement
    double lambda = 0.0;  // Chebyshev-Halley curvature parameter
    pricing::Branch branch = pricing::Branch::Lower;
    double v_before = 0.0;
    double v_after = 0.0;
};

struct StepResult {
    double v_next = 0.0;
    StepDiagnostics diag;
    bool degenerate = false;
};

/// Lower branch: g' = (2/sqrt(2 pi))/(N+ - N-) and g''/g' = (h+t)(h-t)/v - g'.
struct LowerRatios {
    double gprime = 0.0;
    double d2_ratio = 0.0;
};
LowerRatios lower_ratios(const pricing::TailObjectiveEval& ev);

/// Upper branch: l' = -2/(sqrt(2 pi) S) and
/// l''/l' = -(h+t)(1/2 - x/v^2) + 2/(sqrt(2 pi) S), with S = M+ + M-.
struct UpperRatios {
    double lprime = 0.0;
    double d2_ratio = 0.0;
};
UpperRatios upper_ratios(const pricing::TailObjectiveEval& ev);

/// One Euler-Chebyshev step v + eta (1 + lambda/2) on ln c towards
/// target_log_c. Falls back to the Newton value when the cubic update is
/// non-finite or non-positive, and keeps v when even that fails.
StepResult chebyshev_step(double x, double v, double target_log_c);

/// One Halley step v + eta / (1 - lambda/2) on ln(1-c) towards
/// target_log_gap, with the same fallback chain.
StepResult halley_step(double x, double v, double target_log_gap);

struct SolveTrace {
    pricing::Branch branch = pricing::Branch::Lower;
    std::array<double, 4> v{};  // v0..v3
    bool degenerate = false;    // objective collapsed; caller reroutes
};

/// Exactly three refinement steps from v0 on the branch selected by
/// c_target <= 1/2; per-iteration values recorded.
SolveTrace refine3(double x, double c_target, double v0);

/// Test probe for the curvature lemmas: y is the log-vega of the selected
/// branch, a = k^2/v^3 - v/4, beta_v = 3k^2/v^4 + 1/4, q = g''/g', and
/// schwarz_bound = (y^2 - a^2)/2 - beta_v.
struct CurvatureDiagnostics {
    double y = 0.0;
    double a = 0.0;
    double beta_v = 0.0;
    double q = 0.0;
    double schwarz_bound = 0.0;
};
CurvatureDiagnostics curvature_probe(double x, double v, pricing::Branch branch);

}  // namespace ivsolve::refine
