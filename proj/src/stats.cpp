#include "rnd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rnd/calib.hpp"
#include "rnd/errors.hpp"
#include "rnd/pricing.hpp"

namespace rnd {

double quantile(std::vector<double> v, double p) {
    if (v.empty()) throw DomainError("quantile of an empty sample");
    std::sort(v.begin(), v.end());
    const double h = (static_cast<double>(v.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

const std::vector<int>& default_levels() {
    static const std::vector<int> l{10, 25, 50, 75, 90, 95, 99};
    return l;
}

double Summary::at(int level) const {
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (levels[i] == level) return values[i];
    throw DomainError("quantile level not in summary");
}

Summary summarize(const std::vector<double>& errors, const std::vector<int>& levels) {
    Summary s;
    s.n_points = errors.size();
    s.levels = levels;
    if (errors.empty()) {
        s.values.assign(levels.size(), 0.0);
        return s;
    }
    std::vector<double> sorted = errors;
    std::sort(sorted.begin(), sorted.end());
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    for (int l : levels) s.values.push_back(quantile(sorted, l / 100.0));
    return s;
}

std::vector<double> synth_strikes(std::uint64_t seed, int n, double lo, double hi) {
    if (!(lo < hi) || n < 1) throw DomainError("synth_strikes: need lo < hi and n >= 1");
    std::mt19937_64 gen(seed);
    std::vector<double> k(n);
    // 53 random bits, so the draw does not depend on the standard library's distributions
    for (auto& x : k) x = lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    std::sort(k.begin(), k.end());
    return k;
}

namespace {

std::vector<double> floored(const std::vector<double>& v, bool on) {
    if (!on) return v;
    std::vector<double> out(v);
    for (auto& x : out) x = std::max(x, 0.0);
    return out;
}

}  // namespace

ErrorReport pricing_error_stats(const std::vector<double>& target, const std::vector<double>& model,
                                bool floor_at_zero) {
    ErrorReport r;
    r.all = summarize(rel_errors(floored(model, floor_at_zero), target));
    r.in_range = r.all;
    return r;
}

std::size_t anchor_index(const std::vector<double>& strikes) {
    if (strikes.empty()) throw DomainError("anchor of an empty strike set");
    return (strikes.size() - 1) / 2;
}

ErrorReport corrected_experiment(const std::vector<double>& target, const std::vector<double>& model,
                                 const std::vector<double>& strikes, bool floor_at_zero) {
    if (strikes.size() < 2 || target.size() != strikes.size() || model.size() != strikes.size())
        throw DomainError("corrected_experiment: need at least two strikes and matching prices");
    if (!std::is_sorted(strikes.begin(), strikes.end()))
        throw DomainError("corrected_experiment: strikes must be sorted");
    const std::size_t i0 = anchor_index(strikes);
    std::vector<double> t, m;
    for (std::size_t j = 0; j < strikes.size(); ++j) {
        if (j == i0) continue;
        t.push_back(target[j]);
        m.push_back(corrected_price(model[j], model[i0], target[i0], strikes[j], strikes[i0]));
    }
    return pricing_error_stats(t, m, floor_at_zero);
}

}  // namespace rnd
