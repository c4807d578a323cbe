// SPDX-License-Identifier: MIT
#pragma once

// Accuracy aggregation (ulp errors against the persisted references), the
// latency protocol (min over sweeps and runs, warm-up discarded, single
// thread), and the CSV emitters behind the paper-style figures.

#include <iosfwd>
#include <string>
#include <vector>

#include "ivsolve/datasets.hpp"

namespace ivsolve::bench {

struct ErrorStats {
    double max_ulp = 0.0;
    double max_abs_vol = 0.0;
    int count = 0;
    int argmax_case = -1;  // index of the max-ulp case
};

/// Solve every case (x = log(ex)) and aggregate ulp / absolute total-vol
/// errors against v_ref. Deterministic; may parallelize across cases.
ErrorStats run_accuracy(const std::vector<data::BenchCase>& cases, bool polished,
                        int threads = 1);

struct LatencyResult {
    double ns_per_call = 0.0;          // min over all timed sweeps / case count
    double run_min_ns[3] = {0, 0, 0};  // per-run minima (for stability checks)
    int runs = 3;
};

/// Timing protocol: `runs` independent runs of `sweeps` full-dataset sweeps
/// each, first `warmup` sweeps of each run discarded, single-threaded,
/// monotonic clock, best-effort CPU pinning.
LatencyResult run_latency(const std::vector<data::BenchCase>& cases, bool polished,
                          int sweeps = 500, int runs = 3, int warmup = 10);

enum class Figure { Fig1Sweeps, Fig2Steps, Fig3BranchMap, Fig4Convergence, Fig5Roundtrip };

const char* figure_name(Figure f);
bool figure_from_name(const std::string& name, Figure& out);

/// Emit the data behind one diagnostic figure as CSV. Fig1 and Fig4 price
/// against the multiprecision oracle at `digits`.
void emit_figure_data(Figure which, std::ostream& os, int digits = 50);

}  // namespace ivsolve::bench
