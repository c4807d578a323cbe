// SPDX-License-Identifier: MIT
#pragma once

// The eight benchmark grids, their construction rules and filters, and the
// persisted reference tables (multiprecision prices and total volatilities
// rounded to doubles, stored as lossless hex-float CSV).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ivsolve::data {

enum class Dataset { CLY3D, CLY20, CLY80, Jaeckel, Market, Corners, Stress, HighVol };

inline constexpr Dataset kAllDatasets[] = {Dataset::CLY3D,   Dataset::CLY20, Dataset::CLY80,
                                           Dataset::Jaeckel, Dataset::Market, Dataset::Corners,
                                           Dataset::Stress,  Dataset::HighVol};

const char* dataset_name(Dataset d);
std::optional<Dataset> dataset_from_name(std::string_view name);

/// Golden case counts; the builders are locked to these.
int expected_count(Dataset d);

struct BenchCase {
    double c = 0.0;          // OTM-normalized price (rounded multiprecision)
    double ex = 1.0;         // F*/K*
    double expiry = 0.0;     // T
    double sigma_ref = 0.0;  // generating annualized volatility
    double v_ref = 0.0;      // reference total volatility (rounded mp sigma*sqrt(T))
};

struct RawGridPoint {
    double spot = 0.0;
    double rate = 0.0;
    double strike = 0.0;
    double expiry = 0.0;
    double sigma = 0.0;
};

/// Inclusive-endpoint linspace, lo + (hi-lo)*i/(n-1).
std::vector<double> linspace(double lo, double hi, int n);

/// The raw (unfiltered) grid of a dataset.
std::vector<RawGridPoint> raw_grid(Dataset d);

/// Build a dataset from scratch: multiprecision reference prices at `digits`
/// decimal digits, the per-dataset price filters, and the common
/// normalization filters. Deterministic.
std::vector<BenchCase> generate_reference(Dataset d, int digits = 50);

/// Persisted reference tables.
std::string reference_path(Dataset d, const std::string& dir);
void save_reference(const std::vector<BenchCase>& cases, Dataset d, const std::string& dir);

/// Loads a persisted table; throws MissingReferenceTable when absent.
std::vector<BenchCase> load_reference(Dataset d, const std::string& dir);

}  // namespace ivsolve::data
