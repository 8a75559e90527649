// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include "rnd/hermite.hpp"
#include "rnd/loo.hpp"
#include "rnd/pricing.hpp"
#include "rnd/stats.hpp"

using namespace rnd;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

const std::vector<double>& strikes() {
    static const auto k = synth_strikes(1, 200, 0.5, 1.25);
    return k;
}

void BM_HestonLadder(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(heston_put_ladder(HestonParams{}, PutSpec{}, strikes(), kDefaultDamping, mode(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(strikes().size()));
}

void BM_VgLadder(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(vg_put_ladder(VgParams{}, PutSpec{}, strikes(), mode(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(strikes().size()));
}

void BM_HermiteLadder(benchmark::State& st) {
    const HermiteModel m{Flavor::free, 0.28, -0.03, {0.4, -0.03, 0.02, 0.011, -0.004, 0.002}};
    for (auto _ : st) benchmark::DoNotOptimize(hermite_put_ladder(m, PutSpec{}, strikes(), mode(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(strikes().size()));
}

void BM_EvalModel(benchmark::State& st) {
    const HermiteModel m{Flavor::free, 0.28, -0.03, {0.4, -0.03, 0.02, 0.011, -0.004, 0.002, 0.001, 0.0005}};
    std::vector<double> xs(1 << 16);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -3.0 + 6.0 * static_cast<double>(i) / xs.size();
    for (auto _ : st) benchmark::DoNotOptimize(st.range(0) ? eval_model_parallel(m, xs) : eval_model(m, xs));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(xs.size()));
}

void BM_Loo(benchmark::State& st) {
    SynthChainSpec s;
    s.model = "vg";
    s.days = 1;
    s.maturities = {30, 90};
    s.quotes = 8;
    const auto chain = synth_chain(s);
    const std::vector<Estimator> ests{parse_estimator("bs"), parse_estimator("hermite:p:2")};
    LooOptions o;
    o.exec = mode(st);
    for (auto _ : st) benchmark::DoNotOptimize(loo_experiment(chain, ests, o));
}

}  // namespace

BENCHMARK(BM_HestonLadder)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VgLadder)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HermiteLadder)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EvalModel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Loo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
