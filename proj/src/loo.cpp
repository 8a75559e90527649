#include "rnd/loo.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>

#include "rnd/chain.hpp"
#include "rnd/errors.hpp"

namespace rnd {

namespace {

struct Task {
    std::size_t block;
    std::size_t held;
    std::size_t est;
};

LooPoint run_task(const std::vector<OptionBlock>& blocks, const std::vector<Estimator>& ests, const Task& t,
                  const FitOptions& fit) {
    const OptionBlock& b = blocks[t.block];
    LooPoint p;
    p.block = t.block;
    p.strike = b.strikes[t.held];
    p.observed = b.prices[t.held];
    p.in_range = t.held > 0 && t.held + 1 < b.size();
    try {
        const OptionBlock cal = b.without(t.held);
        const FittedEstimator f = calibrate(ests[t.est], cal, fit);
        p.model = f.price(b, {p.strike}).front();
        if (!std::isfinite(p.model)) throw DomainError("non-finite model price");
        p.error = std::fabs(p.model / p.observed - 1.0);
    } catch (const std::exception& e) {
        p.failed = true;
        p.message = e.what();
    }
    return p;
}

}  // namespace

std::vector<LooReport> loo_experiment(const std::vector<OptionBlock>& blocks,
                                      const std::vector<Estimator>& estimators, const LooOptions& opt) {
    if (opt.min_block_size < 1) throw DomainError("min_block_size must be at least 1");
    for (const auto& b : blocks)
        if (!block_is_clean(b))
            throw DomainError("block " + b.valuation_date + "/" + std::to_string(b.maturity_days) +
                              " is not clean (strikes increasing, prices positive and nondecreasing)");

    std::vector<Task> tasks;
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (static_cast<int>(blocks[i].size()) <= opt.min_block_size) continue;
        used.push_back(i);
        for (std::size_t e = 0; e < estimators.size(); ++e)
            for (std::size_t j = 0; j < blocks[i].size(); ++j) tasks.push_back({i, j, e});
    }

    std::vector<LooPoint> res(tasks.size());
    const long nt = static_cast<long>(tasks.size());
    if (opt.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < nt; ++i) res[i] = run_task(blocks, estimators, tasks[i], opt.fit);
    } else {
        for (long i = 0; i < nt; ++i) res[i] = run_task(blocks, estimators, tasks[i], opt.fit);
    }

    // Tasks were laid out by block then strike, so the merge order is fixed.
    std::vector<LooReport> out(estimators.size());
    for (std::size_t e = 0; e < estimators.size(); ++e) {
        out[e].estimator = estimators[e];
        out[e].blocks_used = used.size();
    }
    for (std::size_t i = 0; i < tasks.size(); ++i) out[tasks[i].est].points.push_back(res[i]);
    for (auto& r : out) {
        std::vector<double> all, inr;
        for (const auto& p : r.points) {
            if (p.failed) {
                ++r.report.failures;
                continue;
            }
            all.push_back(p.error);
            if (p.in_range) inr.push_back(p.error);
        }
        r.report.all = summarize(all);
        r.report.in_range = summarize(inr);
    }
    return out;
}

std::vector<OptionBlock> synth_chain(const SynthChainSpec& spec) {
    if (spec.days < 1 || spec.quotes < 1 || spec.maturities.empty())
        throw DomainError("synth_chain: need at least one day, maturity and quote");
    if (spec.model == "vg") check_vg(spec.vg);
    else if (spec.model == "heston") check_heston(spec.heston);
    else if (spec.model != "bs") throw DomainError("synth_chain: model must be bs, vg or heston");

    std::vector<OptionBlock> out;
    std::uint64_t stream = 0;
    for (int d = 0; d < spec.days; ++d) {
        using namespace std::chrono;
        const year_month_day ymd{sys_days{2020y / January / 1} + days{d}};
        char date[32];
        std::snprintf(date, sizeof date, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
        for (int m : spec.maturities) {
            if (m <= 0) throw DomainError("synth_chain: maturities must be positive");
            OptionBlock b;
            b.valuation_date = date;
            b.maturity_days = m;
            b.t = m / 365.0;
            b.spot = spec.spot;
            b.rate = spec.rate;
            b.dividend_yield = spec.dividend_yield;
            const auto u = synth_strikes(spec.seed * 1000003ULL + stream++, spec.quotes, spec.lo, spec.hi);
            for (double x : u) b.strikes.push_back(std::round(x * spec.spot * 100.0) / 100.0);
            const PutSpec s = b.spec();
            if (spec.model == "bs") {
                for (double k : b.strikes) {
                    PutSpec sk = s;
                    sk.k = k;
                    b.prices.push_back(bs_put(sk, spec.sigma));
                }
            } else if (spec.model == "vg") {
                b.prices = vg_put_ladder(spec.vg, s, b.strikes);
            } else {
                b.prices = heston_put_ladder(spec.heston, s, b.strikes);
            }
            b.volumes.assign(b.strikes.size(), 100);
            out.push_back(std::move(b));
        }
    }
    // rounding can collide strikes; far-OTM prices can underflow
    CleanOptions co;
    return clean_dataset(out, co);
}

}  // namespace rnd
