// SPDX-License-Identifier: MIT
#include "ivsolve/polish.hpp"

#include <cmath>

#include "ivsolve/pricing.hpp"

namespace ivsolve::polish {

PolishReport jackel_newton_polish(double x, double s, double c_target) {
    PolishReport rep;
    rep.s_before = s;
    rep.s_after = s;
    if (!(c_target <= 0.5)) return rep;

    rep.beta_target = c_target * std::exp(0.5 * x);
    rep.beta_before = pricing::price_expanded(x, s);
    const double nu = pricing::vega_sqrtfwd(x, s);
    const double s_next = s + (rep.beta_target - rep.beta_before) / nu;
    if (!std::isfinite(s_next) || s_next <= 0.0) return rep;

    rep.applied = true;
    rep.s_after = s_next;
    rep.beta_after = pricing::price_expanded(x, s_next);
    return rep;
}

}  // namespace ivsolve::polish
