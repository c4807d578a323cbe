// SPDX-License-Identifier: MIT
#include "ivsolve/datasets.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ivsolve/errors.hpp"
#include "ivsolve/oracle.hpp"

namespace ivsolve::data {

namespace {

void append(std::vector<RawGridPoint>& g, double spot, double rate,
            const std::vector<double>& strikes, const std::vector<double>& expiries,
            const std::vector<double>& sigmas) {
    for (double k : strikes)
        for (double t : expiries)
            for (double s : sigmas) g.push_back({spot, rate, k, t, s});
}

}  // namespace

const char* dataset_name(Dataset d) {
    switch (d) {
        case Dataset::CLY3D: return "CLY3D";
        case Dataset::CLY20: return "CLY20";
        case Dataset::CLY80: return "CLY80";
        case Dataset::Jaeckel: return "Jaeckel";
        case Dataset::Market: return "Market";
        case Dataset::Corners: return "Corners";
        case Dataset::Stress: return "Stress";
        case Dataset::HighVol: return "HighVol";
    }
    return "?";
}

std::optional<Dataset> dataset_from_name(std::string_view name) {
    for (Dataset d : kAllDatasets)
        if (name == dataset_name(d)) return d;
    return std::nullopt;
}

int expected_count(Dataset d) {
    switch (d) {
        case Dataset::CLY3D: return 51321;
        case Dataset::CLY20: return 1600;
        case Dataset::CLY80: return 1600;
        case Dataset::Jaeckel: return 5182;
        case Dataset::Market: return 7151;
        case Dataset::Corners: return 278;
        case Dataset::Stress: return 1270;
        case Dataset::HighVol: return 149;
    }
    return 0;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::vector<RawGridPoint> raw_grid(Dataset d) {
    std::vector<RawGridPoint> g;
    switch (d) {
        case Dataset::CLY3D:
            append(g, 100, 0.03, linspace(105, 800, 40), linspace(0.01, 2, 40),
                   linspace(0.01, 0.99, 40));
            break;
        case Dataset::CLY20:
            append(g, 100, 0.03, linspace(105, 180, 40), linspace(0.1, 2, 40), {0.20});
            break;
        case Dataset::CLY80:
            append(g, 100, 0.03, linspace(105, 800, 40), linspace(0.1, 2, 40), {0.80});
            break;
        case Dataset::Jaeckel: {
            std::vector<double> strikes;
            for (double kf : linspace(0.5, 8, 30)) strikes.push_back(100 * kf);
            append(g, 100, 0.0, strikes, {0.01, 0.1, 0.25, 0.5, 1, 2}, linspace(0.02, 4, 30));
            break;
        }
        case Dataset::Market: {
            std::vector<double> strikes;
            for (double kf : linspace(0.7, 1.5, 30)) strikes.push_back(100 * kf);
            append(g, 100, 0.03, strikes,
                   {1 / 252.0, 5 / 252.0, 21 / 252.0, 63 / 252.0, 0.5, 1, 2, 5},
                   linspace(0.05, 1.5, 30));
            break;
        }
        case Dataset::Corners:
            // Five sub-grids; the (T, sigma) pairings below are the locked
            // enumeration that totals 278 retained cases.
            // (1) low-volatility short-maturity ITM calls
            append(g, 100, 0.03, {80, 85, 90, 95, 98, 99}, {0.001, 0.005, 0.01, 0.02},
                   {0.005, 0.01, 0.02, 0.05});
            // (2) deep OTM calls
            append(g, 100, 0.03, {200, 300, 500, 1000, 2000}, {0.1, 0.5, 1},
                   {0.15, 0.2, 0.25, 0.3});
            // (3) near-OTM short-maturity calls
            append(g, 100, 0.03, linspace(101, 150, 10), {0.01, 0.02, 0.05}, {0.05, 0.1, 0.15});
            // (4) high-volatility cases
            append(g, 100, 0.03, {100, 150, 200, 500}, {0.25, 0.5, 1, 2}, {1.0, 1.5, 2.0, 2.5});
            // (5) near-ATM small-price grid
            append(g, 100, 0.03, {100.5, 101, 102, 105, 110}, {0.001, 0.005, 0.01},
                   {0.005, 0.01, 0.02, 0.05});
            break;
        case Dataset::Stress:
            append(g, 100, 0.03,
                   {101, 102, 103, 110, 150, 200, 500, 1000, 2000, 5000, 10000, 10, 20, 50, 80,
                    90, 95, 98, 99},
                   {0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1, 2, 5, 10},
                   {0.01, 0.02, 0.05, 0.10, 0.20, 0.30, 0.50, 0.80, 0.99});
            break;
        case Dataset::HighVol:
            append(g, 100, 0.0, {1, 2, 3, 4}, {1, 2, 3, 5, 7, 10},
                   {0.5, 0.8, 1.0, 1.2, 1.5, 2.0, 2.5});
            break;
    }
    return g;
}

std::vector<BenchCase> generate_reference(Dataset d, int digits) {
    const oracle::PrecisionContext ctx{digits};
    std::vector<BenchCase> out;
    for (const RawGridPoint& p : raw_grid(d)) {
        const double fwd = p.spot * std::exp(p.rate * p.expiry);
        const double fstar = std::fmin(fwd, p.strike);
        const double kstar = std::fmax(fwd, p.strike);
        const double ex = fstar / kstar;
        const double v_ref = oracle::hp_total_vol(p.sigma, p.expiry, ctx);
        const double c = oracle::hp_price_from_ex(ex, v_ref, ctx);

        const double lnc = std::log(c);
        if (!std::isfinite(lnc) || lnc > -1e-15 || lnc < -708.0 || !(c > 0.0) || !(c < 1.0))
            continue;
        if (d == Dataset::CLY3D) {
            // The comparison script retains present-value prices above 1e-20.
            const double call = std::exp(-p.rate * p.expiry) *
                                (c * fstar + std::fmax(fwd - p.strike, 0.0));
            if (!(call > 1e-20)) continue;
        }
        if (d == Dataset::HighVol && !(lnc <= -0.05)) continue;

        out.push_back({c, ex, p.expiry, p.sigma, v_ref});
    }
    return out;
}

std::string reference_path(Dataset d, const std::string& dir) {
    return dir + "/" + dataset_name(d) + ".csv";
}

void save_reference(const std::vector<BenchCase>& cases, Dataset d, const std::string& dir) {
    std::ofstream os(reference_path(d, dir));
    if (!os) throw std::runtime_error("save_reference: cannot open " + reference_path(d, dir));
    os << "dataset,case_id,c_hex,ex_hex,T_hex,sigma_hex,v_ref_hex\n";
    char line[512];
    for (size_t i = 0; i < cases.size(); ++i) {
        const BenchCase& b = cases[i];
        std::snprintf(line, sizeof line, "%s,%zu,%a,%a,%a,%a,%a\n", dataset_name(d), i, b.c,
                      b.ex, b.expiry, b.sigma_ref, b.v_ref);
        os << line;
    }
}

std::vector<BenchCase> load_reference(Dataset d, const std::string& dir) {
    const std::string path = reference_path(d, dir);
    std::ifstream is(path);
    if (!is)
        throw MissingReferenceTable("missing reference table " + path +
                                    " (run dataset regeneration)");
    std::vector<BenchCase> out;
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        if (cols.size() != 7) throw std::runtime_error("malformed reference row in " + path);
        BenchCase b;
        b.c = std::strtod(cols[2].c_str(), nullptr);
        b.ex = std::strtod(cols[3].c_str(), nullptr);
        b.expiry = std::strtod(cols[4].c_str(), nullptr);
        b.sigma_ref = std::strtod(cols[5].c_str(), nullptr);
        b.v_ref = std::strtod(cols[6].c_str(), nullptr);
        out.push_back(b);
    }
    return out;
}

}  // namespace ivsolve::data
