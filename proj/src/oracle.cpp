// SPDX-License-Identifier: MIT
#include "ivsolve/oracle.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <sstream>

#include "ivsolve/errors.hpp"

namespace ivsolve::oracle {

namespace {

using mp = boost::multiprecision::mpfr_float;

// Scoped default-precision setter. boost's default precision is thread-local,
// so concurrent contexts do not interfere.
class PrecisionGuard {
public:
    explicit PrecisionGuard(int digits) : saved_(mp::default_precision()) {
        mp::default_precision(digits < 50 ? 50 : digits);
    }
    ~PrecisionGuard() { mp::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

mp phi_cdf(const mp& z) { return boost::math::erfc(-z / sqrt(mp(2))) / 2; }

mp phi_pdf(const mp& z) {
    static const char* kPiStr = nullptr;
    (void)kPiStr;
    const mp two_pi = 2 * boost::math::constants::pi<mp>();
    return exp(-z * z / 2) / sqrt(two_pi);
}

// Normalized OTM Black price, eq. c = Phi(x/v + v/2) - e^{-x} Phi(x/v - v/2).
mp black_mp(const mp& x, const mp& v) {
    const mp h = x / v;
    const mp t = v / 2;
    return phi_cdf(h + t) - exp(-x) * phi_cdf(h - t);
}

mp vega_mp(const mp& x, const mp& v) { return phi_pdf(x / v + v / 2); }

std::string to_str(const mp& value, int out_digits) {
    std::ostringstream os;
    os.precision(out_digits);
    os << value;
    return os.str();
}

mp implied_vol_mp(double x, double c, const PrecisionContext& ctx, std::optional<double> guess) {
    if (!(c > 0.0) || !(c < 1.0)) throw InvalidInput("hp_implied_vol: c outside (0,1)");
    const mp xm(x), cm(c);

    mp lo = 0, hi;
    if (guess && *guess > 0 && std::isfinite(*guess)) {
        hi = mp(*guess);
        // widen around the guess until it brackets
        mp w = hi / 8;
        lo = hi - w > 0 ? hi - w : mp(0);
        while (black_mp(xm, hi) < cm) {
            lo = hi;
            hi *= 2;
        }
        if (lo > 0 && black_mp(xm, lo) > cm) lo = 0;
    } else {
        hi = mp(1);
        while (black_mp(xm, hi) < cm) {
            hi *= 2;
            if (hi > mp("1e30")) throw NoConvergence("hp_implied_vol: bracket expansion failed");
        }
    }
    // bisection to ~10 significant digits
    for (int i = 0; i < 60; ++i) {
        const mp mid = (lo + hi) / 2;
        if (black_mp(xm, mid) < cm)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < hi * mp("1e-11")) break;
    }
    mp v = (lo + hi) / 2;
    // Newton to ctx.digits - 10
    const mp tol = pow(mp(10), -(ctx.digits - 10));
    for (int i = 0; i < 200; ++i) {
        const mp f = black_mp(xm, v) - cm;
        const mp step = f / vega_mp(xm, v);
        v -= step;
        if (abs(step) < abs(v) * tol) {
            // repricing residual check
            if (abs(black_mp(xm, v) - cm) > abs(cm) * tol * 100)
                continue;
            return v;
        }
    }
    throw NoConvergence("hp_implied_vol: Newton did not converge");
}

}  // namespace

double hp_price(double x, double v, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx.digits);
    return black_mp(mp(x), mp(v)).convert_to<double>();
}

double hp_price_ln(double x, double v, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx.digits);
    return log(black_mp(mp(x), mp(v))).convert_to<double>();
}

std::string hp_price_str(double x, double v, int out_digits, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx.digits);
    return to_str(black_mp(mp(x), mp(v)), out_digits);
}

double hp_implied_vol(double x, double c, const PrecisionContext& ctx, std::optional<double> guess) {
    PrecisionGuard g(ctx.digits);
    return implied_vol_mp(x, c, ctx, guess).convert_to<double>();
}

std::string hp_implied_vol_str(double x, double c, int out_digits, const PrecisionContext& ctx,
                               std::optional<double> guess) {
    PrecisionGuard g(ctx.digits);
    return to_str(implied_vol_mp(x, c, ctx, guess), out_digits);
}

double ulp_error(double v_hat, double v_ref) {
    const double spacing = std::nextafter(v_ref, HUGE_VAL) - v_ref;
    return std::fabs(v_hat - v_ref) / spacing;
}

double price_agreement_digits(double x, double v) {
    mp a, b;
    {
        PrecisionGuard g(50);
        a = black_mp(mp(x), mp(v));
    }
    {
        PrecisionGuard g(120);
        b = black_mp(mp(x), mp(v));
        if (a == b) return 120.0;
        const mp rel = abs(a - b) / abs(b);
        return (-log10(rel)).convert_to<double>();
    }
}

double hp_erfcx(double z, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx.digits);
    const mp zm(z);
    return (exp(zm * zm) * boost::math::erfc(zm)).convert_to<double>();
}

double hp_norm_cdf(double z, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx.digits);
    return phi_cdf(mp(z)).convert_to<double>();
}

double hp_inv_norm_cdf(double p, const PrecisionContext& ctx) {
    if (!(p > 0.0) || !(p < 1.0)) throw InvalidInput("hp_inv_norm_cdf: p outside (0,1)");
    PrecisionGuard g(ctx.digits);
    const mp pm(p);
    mp lo = -40, hi = 40;
    for (int i = 0; i < 80; ++i) {
        const mp mid = (lo + hi) / 2;
        if (phi_cdf(mid) < pm)
            lo = mid;
        else
            hi = mid;
    }
    mp z = (lo + hi) / 2;
    const mp tol = pow(mp(10), -(ctx.digits - 8));
    for (int i = 0; i < 100; ++i) {
        const mp step = (phi_cdf(z) - pm) / phi_pdf(z);
        z -= step;
        if (abs(step) < (abs(z) + 1) * tol) return z.convert_to<double>();
    }
    throw NoConvergence("hp_inv_norm_cdf: Newton did not converge");
}

double hp_bachelier_price(double m, double v, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx.digits);
    const mp mm(m), vm(v);
    const mp a = mm / vm;
    return (vm * phi_pdf(a) - mm * phi_cdf(-a)).convert_to<double>();
}

double hp_coeff_a(double h, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx.digits);
    const mp hm(h);
    return (1 + hm * phi_cdf(hm) / phi_pdf(hm)).convert_to<double>();
}

double hp_price_from_ex(double ex, double v, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx.digits);
    return black_mp(log(mp(ex)), mp(v)).convert_to<double>();
}

double hp_total_vol(double sigma, double expiry, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx.digits);
    return (mp(sigma) * sqrt(mp(expiry))).convert_to<double>();
}

double hp_call_price(double forward, double strike, double v, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx.digits);
    const mp f(forward), k(strike), vm(v);
    const mp x = log(f / k);
    const mp h = x / vm;
    const mp t = vm / 2;
    return (f * phi_cdf(h + t) - k * phi_cdf(h - t)).convert_to<double>();
}

}  // namespace ivsolve::oracle
