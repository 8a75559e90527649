#pragma once

#include <string>
#include <vector>

#include "rnd/pricing.hpp"

namespace rnd {

// Quotes sharing one valuation date and one maturity.
struct OptionBlock {
    std::string valuation_date;
    int maturity_days = 0;
    double t = 0.0;  // ACT/365
    double spot = 1.0;
    double rate = 0.0;
    double dividend_yield = 0.0;
    std::vector<double> strikes;
    std::vector<double> prices;
    std::vector<long> volumes;

    std::size_t size() const { return strikes.size(); }
    PutSpec spec() const { return {spot, 1.0, rate, dividend_yield, t}; }
    OptionBlock without(std::size_t i) const;
};

}  // namespace rnd
