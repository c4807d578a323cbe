// SPDX-License-Identifier: MIT
#pragma once

// Optional final Newton correction against the expanded reference price,
// applied in the sqrt-forward scale and only on the lower-price half.

namespace ivsolve::polish {

enum class PolishCutoff { Half, CJ };

/// Expansion threshold of the reference evaluator's low-price regions,
/// erf(sqrt(2) eps^{1/16}); exposed for the cutoff experiment.
inline constexpr double kCJ = 0.16650723223355586;

inline constexpr double cutoff_value(PolishCutoff c) {
    return c == PolishCutoff::Half ? 0.5 : kCJ;
}

struct PolishReport {
    bool applied = false;
    double beta_target = 0.0;
    double beta_before = 0.0;
    double beta_after = 0.0;
    double s_before = 0.0;
    double s_after = 0.0;
};

/// One Newton step s + (beta* - beta_J(x,s)) / nu(x,s). Returns s unchanged
/// (applied = false) for c_target > 1/2 or when the step is non-finite.
PolishReport jackel_newton_polish(double x, double s, double c_target);

}  // namespace ivsolve::polish
