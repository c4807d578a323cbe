// SPDX-License-Identifier: MIT
//
// ivsolve command line: quote inversion, pricing paths, benchmark runs,
// reference-table regeneration, figure data, and oracle queries.
//
// Exit codes: 0 on success, 2 on input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "ivsolve/bench.hpp"
#include "ivsolve/datasets.hpp"
#include "ivsolve/errors.hpp"
#include "ivsolve/normalize.hpp"
#include "ivsolve/oracle.hpp"
#include "ivsolve/pricing.hpp"
#include "ivsolve/solver.hpp"

using nlohmann::json;

namespace {

// Numeric flags accept decimal and hexadecimal float literals so worked
// examples can be fed bit-exactly.
double parse_double(const std::string& s, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0')
        throw ivsolve::InvalidInput(std::string("bad numeric value for ") + what + ": " + s);
    return v;
}

json branch_path_json(const ivsolve::SolveResult& r) {
    json tags = json::array();
    for (int i = 0; i < r.branch_path.count; ++i)
        tags.push_back(ivsolve::branch_tag_name(r.branch_path.tags[i]));
    return tags;
}

int cmd_invert(const std::string& kind, const std::string& forward_s, const std::string& spot_s,
               const std::string& rate_s, const std::string& strike_s,
               const std::string& expiry_s, const std::string& price_s, bool polish,
               bool as_json) {
    ivsolve::RawQuote q;
    q.kind = kind == "put" ? ivsolve::OptionKind::Put : ivsolve::OptionKind::Call;
    q.strike = parse_double(strike_s, "--strike");
    q.expiry = parse_double(expiry_s, "--expiry");
    q.price = parse_double(price_s, "--price");
    if (!forward_s.empty()) {
        q.forward = parse_double(forward_s, "--forward");
    } else {
        const double spot = parse_double(spot_s, "--spot");
        const double rate = rate_s.empty() ? 0.0 : parse_double(rate_s, "--rate");
        q = ivsolve::RawQuote::from_spot(q.kind, spot, rate, q.strike, q.expiry, q.price);
    }
    const auto r = ivsolve::implied_vol_from_quote(q, polish);
    if (as_json) {
        json out;
        out["implied_vol"] = r.implied_vol;
        out["total_vol"] = r.total_vol;
        out["branch_path"] = branch_path_json(r);
        json tr = json::array();
        for (int i = 0; i < r.trace_len; ++i) tr.push_back(r.trace[i]);
        out["trace"] = tr;
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("implied_vol  %.17g\n", r.implied_vol);
        std::printf("total_vol    %.17g\n", r.total_vol);
        std::printf("branch_path ");
        for (int i = 0; i < r.branch_path.count; ++i)
            std::printf(" %s", ivsolve::branch_tag_name(r.branch_path.tags[i]));
        std::printf("\ntrace       ");
        for (int i = 0; i < r.trace_len; ++i) std::printf(" %.17g", r.trace[i]);
        std::printf("\n");
    }
    return 0;
}

int cmd_price(const std::string& x_s, const std::string& v_s, const std::string& path,
              bool as_json) {
    const double x = parse_double(x_s, "--x");
    const double v = parse_double(v_s, "--v");
    if (!(x <= 0.0) || !(v > 0.0)) throw ivsolve::InvalidInput("price: need x <= 0 and v > 0");
    double c;
    if (path == "cdf") {
        c = ivsolve::pricing::price_cdf(x, v);
    } else if (path == "erfcxlog") {
        c = ivsolve::pricing::price_erfcx_log(x, v);
    } else if (path == "expanded") {
        c = ivsolve::c_from_beta(ivsolve::pricing::price_expanded(x, v), x);
    } else {
        throw ivsolve::InvalidInput("price: unknown --path " + path);
    }
    if (as_json) {
        json out;
        out["x"] = x;
        out["v"] = v;
        out["path"] = path;
        out["c"] = c;
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("%.17g\n", c);
    }
    return 0;
}

int cmd_bench(const std::string& dataset, const std::string& variant, bool accuracy, bool latency,
              const std::string& data_dir, const std::string& out_file, int threads, int sweeps,
              int runs) {
    std::vector<ivsolve::data::Dataset> sets;
    if (dataset == "all") {
        for (auto d : ivsolve::data::kAllDatasets) sets.push_back(d);
    } else {
        const auto d = ivsolve::data::dataset_from_name(dataset);
        if (!d) throw ivsolve::InvalidInput("unknown dataset " + dataset);
        sets.push_back(*d);
    }
    const bool polished = variant == "polished";
    if (!polished && variant != "unpolished")
        throw ivsolve::InvalidInput("unknown variant " + variant);

    json out;
    for (auto d : sets) {
        const auto cases = ivsolve::data::load_reference(d, data_dir);
        json row;
        row["cases"] = cases.size();
        row["variant"] = variant;
        if (accuracy) {
            const auto st = ivsolve::bench::run_accuracy(cases, polished, threads);
            row["max_ulp"] = st.max_ulp;
            row["max_abs_vol"] = st.max_abs_vol;
            std::printf("%-8s %-10s cases %6d  max_ulp %10.1f  max_abs %.3e\n",
                        ivsolve::data::dataset_name(d), variant.c_str(), st.count, st.max_ulp,
                        st.max_abs_vol);
        }
        if (latency) {
            const auto lt = ivsolve::bench::run_latency(cases, polished, sweeps, runs);
            row["ns_per_call"] = lt.ns_per_call;
            std::printf("%-8s %-10s latency %8.1f ns/call\n", ivsolve::data::dataset_name(d),
                        variant.c_str(), lt.ns_per_call);
        }
        out[ivsolve::data::dataset_name(d)] = row;
    }
    if (!out_file.empty()) {
        std::ofstream os(out_file);
        os << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_datasets(const std::string& dataset, const std::string& data_dir, bool regen, int digits,
                 bool check) {
    std::vector<ivsolve::data::Dataset> sets;
    if (dataset == "all") {
        for (auto d : ivsolve::data::kAllDatasets) sets.push_back(d);
    } else {
        const auto d = ivsolve::data::dataset_from_name(dataset);
        if (!d) throw ivsolve::InvalidInput("unknown dataset " + dataset);
        sets.push_back(*d);
    }
    for (auto d : sets) {
        if (regen) {
            const auto cases = ivsolve::data::generate_reference(d, digits);
            ivsolve::data::save_reference(cases, d, data_dir);
            std::printf("%-8s regenerated %zu cases (expected %d)\n",
                        ivsolve::data::dataset_name(d), cases.size(),
                        ivsolve::data::expected_count(d));
        }
        if (check) {
            const auto cases = ivsolve::data::load_reference(d, data_dir);
            const bool ok = static_cast<int>(cases.size()) == ivsolve::data::expected_count(d);
            std::printf("%-8s %zu cases (expected %d) %s\n", ivsolve::data::dataset_name(d),
                        cases.size(), ivsolve::data::expected_count(d), ok ? "OK" : "MISMATCH");
            if (!ok) return 2;
        }
    }
    return 0;
}

int cmd_figdata(const std::string& which, const std::string& out_file, int digits) {
    ivsolve::bench::Figure fig;
    if (!ivsolve::bench::figure_from_name(which, fig))
        throw ivsolve::InvalidInput("unknown figure " + which);
    if (out_file.empty()) {
        ivsolve::bench::emit_figure_data(fig, std::cout, digits);
    } else {
        std::ofstream os(out_file);
        if (!os) throw ivsolve::InvalidInput("cannot open " + out_file);
        ivsolve::bench::emit_figure_data(fig, os, digits);
    }
    return 0;
}

int cmd_oracle(const std::string& op, const std::string& x_s, const std::string& v_s,
               const std::string& c_s, int digits, int out_digits) {
    const ivsolve::oracle::PrecisionContext ctx{digits};
    if (op == "price") {
        const double x = parse_double(x_s, "--x");
        const double v = parse_double(v_s, "--v");
        std::printf("%s\n", ivsolve::oracle::hp_price_str(x, v, out_digits, ctx).c_str());
    } else if (op == "iv") {
        const double x = parse_double(x_s, "--x");
        const double c = parse_double(c_s, "--c");
        std::printf("%s\n", ivsolve::oracle::hp_implied_vol_str(x, c, out_digits, ctx).c_str());
    } else {
        throw ivsolve::InvalidInput("unknown oracle op " + op + " (price|iv)");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Black implied-volatility solver and benchmark harness"};
    app.require_subcommand(1);

    // invert
    auto* invert = app.add_subcommand("invert", "Invert a quote to implied volatility");
    std::string kind = "call", forward_s, spot_s, rate_s, strike_s, expiry_s, price_s;
    bool polish = false, as_json = false;
    invert->add_option("kind", kind, "call|put");
    invert->add_option("--forward", forward_s);
    invert->add_option("--spot", spot_s);
    invert->add_option("--rate", rate_s);
    invert->add_option("--strike", strike_s)->required();
    invert->add_option("--expiry", expiry_s)->required();
    invert->add_option("--price", price_s)->required();
    invert->add_flag("--polish", polish);
    invert->add_flag("--json", as_json);

    // price
    auto* price = app.add_subcommand("price", "Normalized OTM Black price");
    std::string x_s, v_s, path = "expanded";
    price->add_option("--x", x_s)->required();
    price->add_option("--v", v_s)->required();
    price->add_option("--path", path, "cdf|erfcxlog|expanded");
    price->add_flag("--json", as_json);

    // bench
    auto* benchc = app.add_subcommand("bench", "Accuracy / latency benchmark runs");
    std::string dataset = "all", variant = "unpolished", data_dir = "data", out_file;
    bool accuracy = false, latency = false;
    int threads = 1, sweeps = 500, runs = 3;
    benchc->add_option("--dataset", dataset);
    benchc->add_option("--variant", variant, "unpolished|polished");
    benchc->add_flag("--accuracy", accuracy);
    benchc->add_flag("--latency", latency);
    benchc->add_option("--data", data_dir);
    benchc->add_option("--out", out_file);
    benchc->add_option("--threads", threads);
    benchc->add_option("--sweeps", sweeps);
    benchc->add_option("--runs", runs);

    // datasets
    auto* ds = app.add_subcommand("datasets", "Regenerate / check reference tables");
    bool regen = false, check = false;
    int digits = 50;
    ds->add_option("--dataset", dataset);
    ds->add_option("--data", data_dir);
    ds->add_flag("--regen", regen);
    ds->add_flag("--check", check);
    ds->add_option("--digits", digits);

    // figdata
    auto* fd = app.add_subcommand("figdata", "Emit figure CSV data");
    std::string which;
    fd->add_option("--which", which)->required();
    fd->add_option("--out", out_file);
    fd->add_option("--digits", digits);

    // oracle
    auto* orc = app.add_subcommand("oracle", "Multiprecision reference queries");
    std::string op, c_s;
    int out_digits = 21;
    orc->add_option("op", op, "price|iv")->required();
    orc->add_option("--x", x_s);
    orc->add_option("--v", v_s);
    orc->add_option("--c", c_s);
    orc->add_option("--digits", digits);
    orc->add_option("--out-digits", out_digits);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (invert->parsed())
            return cmd_invert(kind, forward_s, spot_s, rate_s, strike_s, expiry_s, price_s,
                              polish, as_json);
        if (price->parsed()) return cmd_price(x_s, v_s, path, as_json);
        if (benchc->parsed())
            return cmd_bench(dataset, variant, accuracy, latency, data_dir, out_file, threads,
                             sweeps, runs);
        if (ds->parsed()) return cmd_datasets(dataset, data_dir, regen, digits, check);
        if (fd->parsed()) return cmd_figdata(which, out_file, digits);
        if (orc->parsed()) return cmd_oracle(op, x_s, v_s, c_s, digits, out_digits);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
