// SPDX-License-Identifier: MIT
#pragma once

// Choi-Huh-Su L3 lower-bound seed with the ATM limit and the conservative
// repair hierarchy for rounded or adversarial inputs.

namespace ivsolve::seed {

enum class SeedSource {
    L3,
    AtmInverse,
    AtmSeries,
    RepairNearAtm,
    RepairOtmAsymptotic,
    RepairTerminal,
};

struct SeedOutcome {
    double v0 = 0.0;   // seed total volatility, >= 1e-10
    double p3 = -1.0;  // L3 probability, or <0 when not applicable
    double z3 = 0.0;   // inverse-normal of p3, meaningful only for L3
    SeedSource source = SeedSource::L3;
};

/// L3 seed: p3 = c(c+E)/(2c+E-1) with E = e^{-x}, z3 = Phi^{-1}(p3), and the
/// rationalized root of d1(v) = z3. At x = 0 the exact ATM inversion
/// v = 2 Phi^{-1}((1+c)/2) is used, with the series sqrt(2 pi) c (1 + pi c^2/12)
/// below c = 1e-4. Any non-finite or non-positive step delegates to
/// repair_seed; the result always carries the 1e-10 positive floor.
SeedOutcome choi_l3(double x, double c);

/// Conservative fallback hierarchy: near-ATM sqrt(x^2 + 2 pi c^2), guarded
/// OTM asymptotic, then sqrt(2|x|); always floored at 1e-10.
SeedOutcome repair_seed(double x, double c);

}  // namespace ivsolve::seed
