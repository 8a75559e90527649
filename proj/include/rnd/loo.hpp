#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rnd/block.hpp"
#include "rnd/calib.hpp"
#include "rnd/pricing.hpp"
#include "rnd/stats.hpp"

namespace rnd {

struct LooOptions {
    // Blocks with at most this many quotes are skipped.
    int min_block_size = 1;
    Exec exec = Exec::parallel;
    FitOptions fit;
};

struct LooPoint {
    std::size_t block = 0;  // index into the input blocks
    double strike = 0.0;
    double observed = 0.0;
    double model = 0.0;
    double error = 0.0;
    bool in_range = false;
    bool failed = false;
    std::string message;
};

struct LooReport {
    Estimator estimator;
    ErrorReport report;
    std::vector<LooPoint> points;  // ordered by block, then strike
    std::size_t blocks_used = 0;
};

// Leave-one-out: calibrate on all quotes but one, price the held-out strike.
std::vector<LooReport> loo_experiment(const std::vector<OptionBlock>& blocks,
                                      const std::vector<Estimator>& estimators, const LooOptions& opt = {});

// Synthetic chains with prices from a known model.
struct SynthChainSpec {
    std::string model = "heston";  // bs, vg or heston
    double sigma = 0.2;
    VgParams vg;
    HestonParams heston;
    std::uint64_t seed = 1;
    int days = 2;
    std::vector<int> maturities{30, 91, 182};
    int quotes = 8;
    double spot = 100.0;
    double rate = 0.01;
    double dividend_yield = 0.0;
    double lo = 0.8;   // strike range as a fraction of spot
    double hi = 1.15;
};

std::vector<OptionBlock> synth_chain(const SynthChainSpec& spec);

}  // namespace rnd
