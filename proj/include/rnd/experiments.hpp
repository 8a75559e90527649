#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rnd/calib.hpp"
#include "rnd/grid.hpp"
#include "rnd/hermite.hpp"
#include "rnd/heston.hpp"
#include "rnd/scale_location.hpp"
#include "rnd/stats.hpp"
#include "rnd/vg.hpp"

namespace rnd {

// Relative L2/L1/Linf errors of each model against the grid density, in percent.
std::vector<RelativeErrors> density_error_table(const DensityGrid& target, const std::vector<HermiteModel>& models);

struct ApproxSpec {
    std::string name;
    int n = 1;
    Flavor flavor = Flavor::p;
    ScaleMode mode = ScaleMode::p;
    bool optimized = false;
};

struct DensityRow {
    ApproxSpec spec;
    HermiteModel model;
    RelativeErrors err{};
    double j = 0.0;
    bool converged = true;
};

struct DensityTable {
    DensityGrid grid;
    double mean = 0.0;
    double std = 0.0;
    double l2 = 0.0;  // ||f||_2
    std::vector<DensityRow> rows;
};

DensityTable density_experiment(const DensityGrid& grid, const CoeffSource& src, const std::vector<ApproxSpec>& specs,
                                const ScaleOptOptions& opt = {});

std::vector<ApproxSpec> vg_default_specs();      // f1p, f1p*, f3m, f3m*
std::vector<ApproxSpec> heston_default_specs();  // f3p, f3p*, f2, f2*, f5m, f5m*

// VG grid: mean +- 25 sd, 2^16 + 1 points. Heston grid: the FFT inversion.
DensityGrid vg_density_grid(const VgParams& p, double t);
DensityTable vg_density_table(const VgParams& p = {}, double t = 1.0,
                              const std::vector<ApproxSpec>& specs = vg_default_specs());
DensityTable heston_density_table(const HestonParams& p = {}, double t = 1.0,
                                  const std::vector<ApproxSpec>& specs = heston_default_specs());

struct PricingTable {
    std::vector<double> strikes;
    std::vector<double> target;
    std::vector<std::string> names;
    std::vector<std::vector<double>> prices;  // per model, unfloored
    std::vector<ErrorReport> raw;
    std::vector<ErrorReport> corrected;
    bool floored = false;
};

// Prices of every row's model at s0 = 1, r = q = 0, maturity t, against the target prices.
PricingTable pricing_table(const DensityTable& dt, const std::vector<double>& strikes,
                           const std::vector<double>& target, double t, bool floor_at_zero);

PricingTable vg_pricing_table(const DensityTable& dt, const VgParams& p, double t, std::uint64_t seed,
                              bool floor_at_zero = true);
PricingTable heston_pricing_table(const DensityTable& dt, const HestonParams& p, double t, std::uint64_t seed,
                                  bool floor_at_zero = true);

// A Hermite estimator calibrated directly to the synthetic prices.
struct PriceFitReport {
    HermiteModel model;
    CalibrationResult result;
    Summary errors;  // in-sample absolute relative errors
    double max_error = 0.0;
};
PriceFitReport price_fit_experiment(const std::vector<double>& strikes, const std::vector<double>& target, double t,
                                    int n, Flavor flavor);

}  // namespace rnd
