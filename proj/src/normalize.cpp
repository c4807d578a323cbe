// SPDX-License-Identifier: MIT
#include "ivsolve/normalize.hpp"

#include <cfloat>
#include <cmath>

namespace ivsolve {

RawQuote RawQuote::from_spot(OptionKind kind, double spot, double rate, double strike,
                             double expiry, double price) {
    RawQuote q;
    q.kind = kind;
    q.forward = spot * std::exp(rate * expiry);
    q.strike = strike;
    q.expiry = expiry;
    q.price = price;
    return q;
}

NormalizedQuote normalize(const RawQuote& q) {
    if (!std::isfinite(q.forward) || !std::isfinite(q.strike) || !std::isfinite(q.expiry) ||
        !std::isfinite(q.price))
        throw InvalidInput("normalize: non-finite quote field");
    if (!(q.forward > 0.0) || !(q.strike > 0.0) || !(q.expiry > 0.0))
        throw InvalidInput("normalize: forward, strike and expiry must be positive");
    if (q.price < 0.0) throw InvalidInput("normalize: negative price");

    const double fstar = std::fmin(q.forward, q.strike);
    const double kstar = std::fmax(q.forward, q.strike);

    // Parity table: every admissible input becomes an undiscounted OTM call.
    double c_otm;
    if (q.kind == OptionKind::Call)
        c_otm = q.forward <= q.strike ? q.price : q.price - (q.forward - q.strike);
    else
        c_otm = q.forward > q.strike ? q.price : q.price - (q.strike - q.forward);

    const double c = c_otm / fstar;
    if (!(c_otm > 0.0) || c >= 1.0 - DBL_EPSILON)
        throw ArbitrageViolation("normalize: price outside the open no-arbitrage band");

    NormalizedQuote n;
    n.ex = fstar / kstar;
    n.x = std::log(n.ex);
    n.c = c;
    n.expiry = q.expiry;
    return n;
}

double beta_from_c(double c, double x) { return c * std::exp(0.5 * x); }

double c_from_beta(double beta, double x) { return beta * std::exp(-0.5 * x); }

double vol_from_total(double v, double expiry) { return v / std::sqrt(expiry); }

}  // namespace ivsolve
