#pragma once

#include <cstdint>
#include <vector>

namespace rnd {

// Type-7 quantile: linear interpolation between order statistics.
double quantile(std::vector<double> v, double p);

const std::vector<int>& default_levels();  // 10, 25, 50, 75, 90, 95, 99

struct Summary {
    std::size_t n_points = 0;
    double mean = 0.0;
    std::vector<int> levels;
    std::vector<double> values;  // quantiles at `levels`, same order
    double at(int level) const;
};

Summary summarize(const std::vector<double>& errors, const std::vector<int>& levels = default_levels());

// Errors are fractions; multiply by 100 for percentage points.
struct ErrorReport {
    Summary all;
    Summary in_range;  // held-out strikes inside the calibration strike span
    std::size_t failures = 0;
};

// N i.i.d. uniforms on [lo, hi] from a seeded 64-bit Mersenne twister, sorted.
std::vector<double> synth_strikes(std::uint64_t seed, int n = 20, double lo = 0.5, double hi = 1.25);

// Absolute relative errors of model against target. With floor_at_zero, negative
// model prices count as zero (error 100%).
ErrorReport pricing_error_stats(const std::vector<double>& target, const std::vector<double>& model,
                                bool floor_at_zero = false);

// Index of the anchor strike: the lower median of the sorted strikes.
std::size_t anchor_index(const std::vector<double>& strikes);

// Corrected prices anchored at the median strike; the anchor is dropped from the sample.
ErrorReport corrected_experiment(const std::vector<double>& target, const std::vector<double>& model,
                                 const std::vector<double>& strikes, bool floor_at_zero = false);

}  // namespace rnd
