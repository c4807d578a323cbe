// SPDX-License-Identifier: MIT
#include "ivsolve/refine.hpp"

#include <cmath>

namespace ivsolve::refine {

namespace {
constexpr double kTwoInvSqrt2Pi = 0.79788456080286535588;
}

LowerRatios lower_ratios(const pricing::TailObjectiveEval& ev) {
    LowerRatios r;
    r.gprime = kTwoInvSqrt2Pi / (ev.n_plus - ev.n_minus);
    const double h = ev.coords.h;
    const double t = ev.coords.t;
    r.d2_ratio = (h + t) * (h - t) / (2.0 * t) - r.gprime;
    return r;
}

UpperRatios upper_ratios(const pricing::TailObjectiveEval& ev) {
    UpperRatios r;
    const double s = ev.n_plus + ev.n_minus;
    r.lprime = -kTwoInvSqrt2Pi / s;
    const double h = ev.coords.h;
    const double t = ev.coords.t;
    const double v = 2.0 * t;
    r.d2_ratio = -(h + t) * (0.5 - h / v) - r.lprime;
    return r;
}

StepResult chebyshev_step(double x, double v, double target_log_c) {
    StepResult out;
    const auto ev = pricing::log_price_lower(x, v);
    if (ev.degenerate) {
        out.v_next = v;
        out.degenerate = true;
        return out;
    }
    const auto lr = lower_ratios(ev);
    const double g = ev.log_value - target_log_c;
    const double eta = -g / lr.gprime;
    const double lambda = g * lr.d2_ratio / lr.gprime;
    double v_next = v + eta * (1.0 + 0.5 * lambda);
    if (!std::isfinite(v_next) || v_next <= 0.0) v_next = v + eta;
    if (!std::isfinite(v_next) || v_next <= 0.0) v_next = v;
    out.v_next = v_next;
    out.diag = {eta, lambda, pricing::Branch::Lower, v, v_next};
    return out;
}

StepResult halley_step(double x, double v, double target_log_gap) {
    StepResult out;
    const auto ev = pricing::log_gap_upper(x, v);
    const auto ur = upper_ratios(ev);
    const double f = ev.log_value - target_log_gap;
    const double eta = -f / ur.lprime;
    const double lambda = f * ur.d2_ratio / ur.lprime;
    double v_next = v + eta / (1.0 - 0.5 * lambda);
    if (!std::isfinite(v_next) || v_next <= 0.0) v_next = v + eta;
    if (!std::isfinite(v_next) || v_next <= 0.0) v_next = v;
    out.v_next = v_next;
    out.diag = {eta, lambda, pricing::Branch::Upper, v, v_next};
    return out;
}

SolveTrace refine3(double x, double c_target, double v0) {
    SolveTrace tr;
    tr.branch = c_target <= 0.5 ? pricing::Branch::Lower : pricing::Branch::Upper;
    tr.v[0] = v0;
    if (tr.branch == pricing::Branch::Lower) {
        const double target = std::log(c_target);
        for (int i = 0; i < 3; ++i) {
            const auto st = chebyshev_step(x, tr.v[i], target);
            if (st.degenerate) {
                tr.degenerate = true;
                tr.v[i + 1] = tr.v[i];
                for (int j = i + 1; j < 3; ++j) tr.v[j + 1] = tr.v[j];
                return tr;
            }
            tr.v[i + 1] = st.v_next;
        }
    } else {
        const double target = std::log(1.0 - c_target);  // exact subtraction for c >= 1/2
        for (int i = 0; i < 3; ++i) tr.v[i + 1] = halley_step(x, tr.v[i], target).v_next;
    }
    return tr;
}

CurvatureDiagnostics curvature_probe(double x, double v, pricing::Branch branch) {
    CurvatureDiagnostics d;
    const double k = -x;
    d.a = k * k / (v * v * v) - 0.25 * v;
    d.beta_v = 3.0 * k * k / (v * v * v * v) + 0.25;
    if (branch == pricing::Branch::Lower) {
        const auto ev = pricing::log_price_lower(x, v);
        const auto lr = lower_ratios(ev);
        d.y = lr.gprime;
        d.q = lr.d2_ratio;
    } else {
        const auto ev = pricing::log_gap_upper(x, v);
        const auto ur = upper_ratios(ev);
        d.y = -ur.lprime;  // G' = -l' > 0
        d.q = ur.d2_ratio;
    }
    d.schwarz_bound = 0.5 * (d.y * d.y - d.a * d.a) - d.beta_v;
    return d;
}

}  // namespace ivsolve::refine
