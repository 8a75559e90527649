#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rnd/block.hpp"

namespace rnd {

// One row of the option-chain CSV:
// valuation_date,maturity_days,spot,rate,dividend_yield,strike,put_price,volume
struct ChainRow {
    std::string valuation_date;  // YYYY-MM-DD
    int maturity_days = 0;
    double spot = 0.0;
    double rate = 0.0;
    double dividend_yield = 0.0;
    double strike = 0.0;
    double put_price = 0.0;
    long volume = 0;
};

extern const char* const kChainHeader;

// Throws SchemaError naming the offending line.
std::vector<ChainRow> read_chain(std::istream& is);
std::vector<ChainRow> read_chain_file(const std::string& path);

// Blocks ordered by (date, maturity), quotes by strike. Spot, rate and yield must
// agree inside a block.
std::vector<OptionBlock> group_blocks(const std::vector<ChainRow>& rows);

void write_chain(std::ostream& os, const std::vector<OptionBlock>& blocks);

struct CleanOptions {
    long min_volume = 1;
    // On a monotonicity conflict keep the lower strike (ascending scan against the running
    // maximum); false keeps the higher strike (descending scan against the running minimum).
    bool keep_lower_strike = true;
};

struct CleanReport {
    std::size_t low_volume = 0;
    std::size_t duplicate_strike = 0;
    std::size_t non_monotone = 0;
    std::size_t empty_blocks = 0;
    std::size_t total() const { return low_volume + duplicate_strike + non_monotone; }
};

std::vector<OptionBlock> clean_dataset(const std::vector<OptionBlock>& raw, const CleanOptions& opt = {},
                                       CleanReport* report = nullptr);

// Strictly increasing strikes, positive prices, nondecreasing in strike.
bool block_is_clean(const OptionBlock& b);

}  // namespace rnd
