// SPDX-License-Identifier: MIT
#pragma once

// Reduction of any admissible call/put quote to the normalized OTM
// representation consumed by the solver: forward/strike ordering, put-call
// parity legs, and the (x, e^x, c, T) coordinates.

#include "ivsolve/errors.hpp"

namespace ivsolve {

enum class OptionKind { Call, Put };

struct RawQuote {
    OptionKind kind = OptionKind::Call;
    double forward = 0.0;  // undiscounted forward
    double strike = 0.0;
    double expiry = 0.0;   // years
    double price = 0.0;    // undiscounted option price

    /// Convenience constructor from spot/rate: forward = spot e^{rate T}.
    static RawQuote from_spot(OptionKind kind, double spot, double rate, double strike,
                              double expiry, double price);
};

struct NormalizedQuote {
    double x = 0.0;       // log-moneyness ln(F*/K*) <= 0
    double ex = 1.0;      // e^x = F*/K* in (0, 1]
    double c = 0.0;       // OTM-forward-normalized price in (0, 1)
    double expiry = 0.0;  // years
};

/// Order the forward/strike pair, strip intrinsic value through the parity
/// leg, and normalize. Throws InvalidInput for non-finite or non-positive
/// fields and ArbitrageViolation when the OTM price leaves the open
/// no-arbitrage band.
NormalizedQuote normalize(const RawQuote& quote);

/// Sqrt-forward normalized price: beta = c e^{x/2}.
double beta_from_c(double c, double x);
double c_from_beta(double beta, double x);

/// sigma = v / sqrt(T).
double vol_from_total(double v, double expiry);

}  // namespace ivsolve
