// SPDX-License-Identifier: MIT
#include "ivsolve/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#ifdef __linux__
#include <sched.h>
#endif

#include "ivsolve/normalize.hpp"
#include "ivsolve/oracle.hpp"
#include "ivsolve/pricing.hpp"
#include "ivsolve/solver.hpp"

namespace ivsolve::bench {

namespace {

struct PreparedCase {
    double x;
    double c;
};

std::vector<PreparedCase> prepare(const std::vector<data::BenchCase>& cases) {
    std::vector<PreparedCase> p(cases.size());
    for (size_t i = 0; i < cases.size(); ++i) p[i] = {std::log(cases[i].ex), cases[i].c};
    return p;
}

inline void keep(double& sink, double v) {
    sink += v;
    asm volatile("" : "+r"(sink));
}

void pin_to_current_cpu() {
#ifdef __linux__
    const int cpu = sched_getcpu();
    if (cpu < 0) return;
    cpu_set_t set;
    CPU_ZERO(&set);
    CPU_SET(cpu, &set);
    (void)sched_setaffinity(0, sizeof set, &set);  // best effort
#endif
}

}  // namespace

ErrorStats run_accuracy(const std::vector<data::BenchCase>& cases, bool polished, int threads) {
    const auto prep = prepare(cases);
    SolverConfig cfg;
    cfg.polish = polished;

    const int nt = std::max(1, threads);
    std::vector<ErrorStats> partial(static_cast<size_t>(nt));
    auto worker = [&](int t) {
        ErrorStats st;
        for (size_t i = static_cast<size_t>(t); i < prep.size(); i += static_cast<size_t>(nt)) {
            const double v_hat = solve_normalized(prep[i].x, prep[i].c, 1.0, cfg).total_vol;
            const double ue = oracle::ulp_error(v_hat, cases[i].v_ref);
            const double ae = std::fabs(v_hat - cases[i].v_ref);
            if (ue > st.max_ulp) {
                st.max_ulp = ue;
                st.argmax_case = static_cast<int>(i);
            }
            st.max_abs_vol = std::fmax(st.max_abs_vol, ae);
            ++st.count;
        }
        partial[static_cast<size_t>(t)] = st;
    };
    if (nt == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    ErrorStats total;
    for (const auto& st : partial) {
        if (st.max_ulp > total.max_ulp) {
            total.max_ulp = st.max_ulp;
            total.argmax_case = st.argmax_case;
        }
        total.max_abs_vol = std::fmax(total.max_abs_vol, st.max_abs_vol);
        total.count += st.count;
    }
    return total;
}

LatencyResult run_latency(const std::vector<data::BenchCase>& cases, bool polished, int sweeps,
                          int runs, int warmup) {
    const auto prep = prepare(cases);
    SolverConfig cfg;
    cfg.polish = polished;
    pin_to_current_cpu();

    LatencyResult res;
    res.runs = std::min(runs, 3);
    double sink = 0.0;
    double global_min = HUGE_VAL;
    for (int run = 0; run < runs; ++run) {
        double run_min = HUGE_VAL;
        for (int sweep = 0; sweep < sweeps; ++sweep) {
            const auto t0 = std::chrono::steady_clock::now();
            for (const auto& pc : prep)
                keep(sink, solve_normalized(pc.x, pc.c, 1.0, cfg).total_vol);
            const auto t1 = std::chrono::steady_clock::now();
            if (sweep < warmup) continue;
            const double ns = std::chrono::duration<double, std::nano>(t1 - t0).count();
            run_min = std::fmin(run_min, ns);
        }
        if (run < 3) res.run_min_ns[run] = run_min / static_cast<double>(prep.size());
        global_min = std::fmin(global_min, run_min);
    }
    res.ns_per_call = global_min / static_cast<double>(prep.size());
    return res;
}

const char* figure_name(Figure f) {
    switch (f) {
        case Figure::Fig1Sweeps: return "fig1_sweeps";
        case Figure::Fig2Steps: return "fig2_steps";
        case Figure::Fig3BranchMap: return "fig3_branchmap";
        case Figure::Fig4Convergence: return "fig4_convergence";
        case Figure::Fig5Roundtrip: return "fig5_roundtrip";
    }
    return "?";
}

bool figure_from_name(const std::string& name, Figure& out) {
    for (Figure f : {Figure::Fig1Sweeps, Figure::Fig2Steps, Figure::Fig3BranchMap,
                     Figure::Fig4Convergence, Figure::Fig5Roundtrip}) {
        if (name == figure_name(f)) {
            out = f;
            return true;
        }
    }
    return false;
}

namespace {

// The three pricing scenarios of the diagnostics table: (F*/K*, v0).
constexpr double kScenarioEx[3] = {0.925, 0.955, 0.995};
constexpr double kScenarioV[3] = {2.99e-2, 5.00e-2, 6.30e-3};

void emit_fig1(std::ostream& os, int digits) {
    os << "scenario,ex,i,v_hex,relerr_cdf,relerr_erfcxlog,relerr_expanded\n";
    char buf[256];
    for (int sc = 0; sc < 3; ++sc) {
        const double ex = kScenarioEx[sc];
        const double x = std::log(ex);
        double v = kScenarioV[sc];
        for (int i = 0; i < 512; ++i) {
            const double c_ref = oracle::hp_price(x, v, {digits});
            const double c_cdf = pricing::price_cdf(x, v);
            const double c_log = pricing::price_erfcx_log(x, v);
            const double c_exp = c_from_beta(pricing::price_expanded(x, v), x);
            std::snprintf(buf, sizeof buf, "%d,%.6g,%d,%a,%.6e,%.6e,%.6e\n", sc, ex, i, v,
                          std::fabs(c_cdf / c_ref - 1.0), std::fabs(c_log / c_ref - 1.0),
                          std::fabs(c_exp / c_ref - 1.0));
            os << buf;
            v = std::nextafter(v, HUGE_VAL);
        }
    }
}

void emit_fig2(std::ostream& os) {
    os << "i,v_hex,dc_cdf,dc_erfcxlog,dc_expanded\n";
    const double x = std::log(0.955);
    double v = 0.05;
    char buf[256];
    for (int i = 0; i < 512; ++i) {
        const double v_next = std::nextafter(v, HUGE_VAL);
        const double d_cdf = pricing::price_cdf(x, v_next) - pricing::price_cdf(x, v);
        const double d_log = pricing::price_erfcx_log(x, v_next) - pricing::price_erfcx_log(x, v);
        const double d_exp = c_from_beta(pricing::price_expanded(x, v_next), x) -
                             c_from_beta(pricing::price_expanded(x, v), x);
        std::snprintf(buf, sizeof buf, "%d,%a,%.6e,%.6e,%.6e\n", i, v, d_cdf, d_log, d_exp);
        os << buf;
        v = v_next;
    }
}

void emit_fig3(std::ostream& os) {
    os << "m,c,seed_tag,refine_tag\n";
    char buf[256];
    for (int im = 0; im < 60; ++im) {
        const double m = std::pow(10.0, -16.0 + 17.0 * im / 59.0);  // 1e-16 .. 10
        for (int ic = 0; ic < 60; ++ic) {
            // logit grid for c in (1e-12, 1 - 1e-6)
            const double lo = 1e-12, hi = 1.0 - 1e-6;
            const double logit_lo = std::log(lo / (1 - lo));
            const double logit_hi = std::log(hi / (1 - hi));
            const double lg = logit_lo + (logit_hi - logit_lo) * ic / 59.0;
            const double c = 1.0 / (1.0 + std::exp(-lg));
            const auto r = solve_normalized(-m, c, 1.0, {});
            const char* seed_tag = branch_tag_name(r.branch_path.tags[0]);
            const char* ref_tag = r.branch_path.count > 1
                                      ? branch_tag_name(r.branch_path.tags[1])
                                      : "";
            std::snprintf(buf, sizeof buf, "%.9e,%.9e,%s,%s\n", m, c, seed_tag, ref_tag);
            os << buf;
        }
    }
}

void emit_fig4(std::ostream& os, int digits) {
    os << "x,v_ref,err_seed,err_step1,err_step2,err_step3\n";
    char buf[320];
    const double xs[4] = {-1e-8, -0.1, -1.0, -3.0};
    for (double x : xs) {
        // admissible v range: keep ln c >= -700
        const double v_lo = std::fmax(1e-3, -x / 36.0);
        const double v_hi = 6.0;
        for (int i = 0; i < 40; ++i) {
            const double v_ref = v_lo * std::pow(v_hi / v_lo, i / 39.0);
            const double c = oracle::hp_price(x, v_ref, {digits});
            if (!(c > 0.0) || !(c < 1.0)) continue;
            const auto r = solve_normalized(x, c, 1.0, {});
            if (r.trace_len < 4) continue;
            double err[4];
            for (int k = 0; k < 4; ++k)
                err[k] = std::fmax(std::fabs(r.trace[k] - v_ref) / v_ref, 1e-18);
            std::snprintf(buf, sizeof buf, "%.9e,%.9e,%.6e,%.6e,%.6e,%.6e\n", x, v_ref, err[0],
                          err[1], err[2], err[3]);
            os << buf;
        }
    }
}

void emit_fig5(std::ostream& os) {
    os << "x,v_ref,iv_relerr_fast,iv_relerr_polished,price_resid_fast,price_resid_polished\n";
    char buf[320];
    const double x = -0.1;
    SolverConfig pol;
    pol.polish = true;
    for (int i = 0; i < 120; ++i) {
        const double v_ref = 0.01 * std::pow(6.0 / 0.01, i / 119.0);
        const double beta = pricing::price_expanded(x, v_ref);
        const double c = c_from_beta(beta, x);
        if (!(c > 0.0) || !(c < 1.0)) continue;
        const double v_fast = solve_normalized(x, c, 1.0, {}).total_vol;
        const double v_pol = solve_normalized(x, c, 1.0, pol).total_vol;
        const double b_fast = pricing::price_expanded(x, v_fast);
        const double b_pol = pricing::price_expanded(x, v_pol);
        std::snprintf(buf, sizeof buf, "%.9e,%.9e,%.6e,%.6e,%.6e,%.6e\n", x, v_ref,
                      std::fabs(v_fast / v_ref - 1.0), std::fabs(v_pol / v_ref - 1.0),
                      std::fabs(b_fast / beta - 1.0), std::fabs(b_pol / beta - 1.0));
        os << buf;
    }
}

}  // namespace

void emit_figure_data(Figure which, std::ostream& os, int digits) {
    switch (which) {
        case Figure::Fig1Sweeps: emit_fig1(os, digits); break;
        case Figure::Fig2Steps: emit_fig2(os); break;
        case Figure::Fig3BranchMap: emit_fig3(os); break;
        case Figure::Fig4Convergence: emit_fig4(os, digits); break;
        case Figure::Fig5Roundtrip: emit_fig5(os); break;
    }
}

}  // namespace ivsolve::bench
