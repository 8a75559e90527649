#pragma once

#include <string>
#include <vector>

#include "rnd/experiments.hpp"
#include "rnd/loo.hpp"

namespace rnd {

// Three significant digits unless full is set (then %.17g).
std::string fmt_num(double v, bool full = false);

struct TextTable {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render_text(const TextTable& t);  // aligned, title line first
std::string render_delimited(const TextTable& t, char sep = ',');

TextTable density_panel(const DensityTable& dt, bool full);
// Mean panel and quantile panel, all figures in percent.
std::vector<TextTable> pricing_panels(const PricingTable& pt, bool corrected, bool full);
TextTable price_fit_panel(const PriceFitReport& r, bool full);
// One panel per estimator, columns = min_block_size values, "all (in-range)" cells.
std::vector<TextTable> loo_panels(const std::vector<int>& sizes, const std::vector<std::vector<LooReport>>& runs,
                                  bool full);

}  // namespace rnd
