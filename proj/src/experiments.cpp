#include "rnd/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "rnd/errors.hpp"
#include "rnd/pricing.hpp"

namespace rnd {

std::vector<RelativeErrors> density_error_table(const DensityGrid& target, const std::vector<HermiteModel>& models) {
    const auto xs = target.abscissae();
    std::vector<RelativeErrors> out;
    for (const auto& m : models) out.push_back(relative_errors(target, eval_model_parallel(m, xs)));
    return out;
}

DensityTable density_experiment(const DensityGrid& grid, const CoeffSource& src, const std::vector<ApproxSpec>& specs,
                                const ScaleOptOptions& opt) {
    DensityTable t;
    t.grid = grid;
    const auto gm = grid_moments(grid);
    t.mean = gm.mean;
    t.std = gm.std;
    t.l2 = std::sqrt(src.norm_sq);
    const auto xs = grid.abscissae();
    for (const auto& s : specs) {
        DensityRow r;
        r.spec = s;
        const auto sl = default_scale_location(t.mean, t.std, s.mode);
        if (s.optimized) {
            const auto o = optimize_scale_location(src, s.n, s.flavor, sl, opt);
            r.model = o.model;
            r.j = o.j;
            r.converged = o.converged;
        } else {
            r.model = model_at(src, s.n, s.flavor, sl.a, sl.b);
            r.j = objective_j(src, s.n, s.flavor, sl.a, sl.b);
        }
        r.err = relative_errors(grid, eval_model_parallel(r.model, xs));
        t.rows.push_back(std::move(r));
    }
    return t;
}

std::vector<ApproxSpec> vg_default_specs() {
    return {{"f1p", 1, Flavor::p, ScaleMode::p, false},
            {"f1p*", 1, Flavor::p, ScaleMode::p, true},
            {"f3m", 3, Flavor::m, ScaleMode::p, false},
            {"f3m*", 3, Flavor::m, ScaleMode::p, true}};
}

std::vector<ApproxSpec> heston_default_specs() {
    return {{"f3p", 3, Flavor::p, ScaleMode::p, false},   {"f3p*", 3, Flavor::p, ScaleMode::p, true},
            {"f2", 2, Flavor::free, ScaleMode::moment, false}, {"f2*", 2, Flavor::free, ScaleMode::moment, true},
            {"f5m", 5, Flavor::m, ScaleMode::p, false},   {"f5m*", 5, Flavor::m, ScaleMode::p, true}};
}

DensityGrid vg_density_grid(const VgParams& p, double t) {
    const auto mo = vg_log_return_moments(p, t);
    return sample_density([&](double x) { return vg_log_return_density(p, t, x); }, mo.mean - 25.0 * mo.std,
                          mo.mean + 25.0 * mo.std, (1u << 16) + 1);
}

DensityTable vg_density_table(const VgParams& p, double t, const std::vector<ApproxSpec>& specs) {
    require_vg_l2(p, t);
    return density_experiment(vg_density_grid(p, t), vg_source(p, t), specs);
}

DensityTable heston_density_table(const HestonParams& p, double t, const std::vector<ApproxSpec>& specs) {
    check_heston(p, true);
    return density_experiment(heston_density_fft(p, t), heston_source(p, t), specs);
}

PricingTable pricing_table(const DensityTable& dt, const std::vector<double>& strikes,
                           const std::vector<double>& target, double t, bool floor_at_zero) {
    if (strikes.size() != target.size()) throw DomainError("pricing_table: size mismatch");
    PricingTable pt;
    pt.strikes = strikes;
    pt.target = target;
    pt.floored = floor_at_zero;
    PutSpec s;
    s.t = t;
    for (const auto& r : dt.rows) {
        pt.names.push_back(r.spec.name);
        auto m = hermite_put_ladder(r.model, s, strikes, Exec::parallel);
        pt.raw.push_back(pricing_error_stats(target, m, floor_at_zero));
        pt.corrected.push_back(corrected_experiment(target, m, strikes, floor_at_zero));
        pt.prices.push_back(std::move(m));
    }
    return pt;
}

PricingTable vg_pricing_table(const DensityTable& dt, const VgParams& p, double t, std::uint64_t seed,
                              bool floor_at_zero) {
    const auto k = synth_strikes(seed);
    PutSpec s;
    s.t = t;
    return pricing_table(dt, k, vg_put_ladder(p, s, k, Exec::parallel), t, floor_at_zero);
}

PricingTable heston_pricing_table(const DensityTable& dt, const HestonParams& p, double t, std::uint64_t seed,
                                  bool floor_at_zero) {
    const auto k = synth_strikes(seed);
    PutSpec s;
    s.t = t;
    return pricing_table(dt, k, heston_put_ladder(p, s, k, kDefaultDamping, Exec::parallel), t, floor_at_zero);
}

PriceFitReport price_fit_experiment(const std::vector<double>& strikes, const std::vector<double>& target, double t,
                                    int n, Flavor flavor) {
    OptionBlock b;
    b.valuation_date = "2000-01-01";
    b.maturity_days = static_cast<int>(std::lround(t * 365.0));
    b.t = t;
    b.strikes = strikes;
    b.prices = target;
    b.volumes.assign(strikes.size(), 1);
    const auto fit = fit_hermite(b, n, flavor);
    PriceFitReport r;
    r.model = fit.model;
    r.result = fit.result;
    const auto e = rel_errors(hermite_put_ladder(fit.model, b.spec(), strikes), target);
    r.errors = summarize(e);
    r.max_error = *std::max_element(e.begin(), e.end());
    return r;
}

}  // namespace rnd
