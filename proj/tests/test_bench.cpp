#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rnd/chain.hpp"
#include "rnd/errors.hpp"
#include "rnd/experiments.hpp"
#include "rnd/format.hpp"
#include "rnd/loo.hpp"
#include "rnd/stats.hpp"

using namespace rnd;

TEST(Quantiles, InterpolatedAndOrdered) {
    EXPECT_DOUBLE_EQ(quantile({0.1, 0.2, 0.3, 0.4}, 0.5), 0.25);
    EXPECT_DOUBLE_EQ(quantile({0.4, 0.1, 0.3, 0.2}, 0.25), 0.175);
    std::vector<double> v;
    std::mt19937_64 g(3);
    std::exponential_distribution<double> e;
    for (int i = 0; i < 101; ++i) v.push_back(e(g));
    const auto s = summarize(v);
    for (std::size_t i = 1; i < s.values.size(); ++i) EXPECT_GE(s.values[i], s.values[i - 1]);
    auto w = v;
    std::shuffle(w.begin(), w.end(), g);
    EXPECT_EQ(summarize(w).values, s.values);
    EXPECT_THROW(quantile({}, 0.5), DomainError);
}

TEST(Quantiles, IdenticalPricesGiveZeros) {
    const std::vector<double> p{0.1, 0.2, 0.3};
    const auto r = pricing_error_stats(p, p);
    EXPECT_EQ(r.all.mean, 0.0);
    for (double q : r.all.values) EXPECT_EQ(q, 0.0);
}

TEST(Quantiles, FloorCountsNegativePricesAsZero) {
    const auto r = pricing_error_stats({1.0, 1.0}, {-0.5, 1.0}, true);
    EXPECT_DOUBLE_EQ(r.all.mean, 0.5);
    const auto u = pricing_error_stats({1.0, 1.0}, {-0.5, 1.0}, false);
    EXPECT_DOUBLE_EQ(u.all.mean, 0.75);
}

TEST(SynthStrikes, SupportDeterminismAndUniformity) {
    const auto a = synth_strikes(42);
    EXPECT_EQ(a.size(), 20u);
    EXPECT_EQ(a, synth_strikes(42));
    EXPECT_NE(a, synth_strikes(43));
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    for (double k : a) {
        EXPECT_GE(k, 0.5);
        EXPECT_LE(k, 1.25);
    }
    // Kolmogorov-Smirnov against U(0, 1), 1% critical value 1.628 / sqrt(n)
    const int n = 10000;
    const auto u = synth_strikes(7, n, 0.0, 1.0);
    double d = 0.0;
    for (int i = 0; i < n; ++i) d = std::max({d, (i + 1.0) / n - u[i], u[i] - static_cast<double>(i) / n});
    EXPECT_LT(d, 1.628 / std::sqrt(n));
    EXPECT_THROW(synth_strikes(1, 5, 1.0, 1.0), DomainError);
}

TEST(Corrected, PerfectModelAndAnchor) {
    const std::vector<double> k{0.8, 0.9, 1.0, 1.1};
    const std::vector<double> p{0.01, 0.03, 0.08, 0.14};
    const auto r = corrected_experiment(p, p, k);
    EXPECT_EQ(r.all.n_points, 3u);
    EXPECT_EQ(r.all.mean, 0.0);
    EXPECT_EQ(anchor_index(k), 1u);  // lower median
    const auto two = corrected_experiment({0.02, 0.05}, {0.01, 0.06}, {0.9, 1.0});
    EXPECT_EQ(two.all.n_points, 1u);
    EXPECT_THROW(corrected_experiment({0.1}, {0.1}, {1.0}), DomainError);
}

TEST(Corrected, AnchorRowExcludedFromTables) {
    const auto dt = vg_density_table();
    const auto pt = vg_pricing_table(dt, VgParams{}, 1.0, 5);
    for (const auto& r : pt.corrected) EXPECT_EQ(r.all.n_points, 19u);
    for (const auto& r : pt.raw) EXPECT_EQ(r.all.n_points, 20u);
}

TEST(Chain, ReadGroupWriteRoundTrip) {
    std::stringstream in(
        "valuation_date,maturity_days,spot,rate,dividend_yield,strike,put_price,volume\n"
        "2012-03-01,30,100,0.01,0.02,95,1.2,10\n"
        "2012-03-01,30,100,0.01,0.02,90,0.6,5\n"
        "2012-03-01,60,100,0.01,0.02,95,2.1,3\n"
        "2012-02-28,30,101,0.01,0.02,95,1.0,1\n");
    const auto blocks = group_blocks(read_chain(in));
    ASSERT_EQ(blocks.size(), 3u);
    EXPECT_EQ(blocks[0].valuation_date, "2012-02-28");
    EXPECT_EQ(blocks[1].strikes, (std::vector<double>{90, 95}));
    EXPECT_DOUBLE_EQ(blocks[2].t, 60.0 / 365.0);
    std::stringstream out;
    write_chain(out, blocks);
    const auto again = group_blocks(read_chain(out));
    ASSERT_EQ(again.size(), blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        EXPECT_EQ(again[i].strikes, blocks[i].strikes);
        EXPECT_EQ(again[i].prices, blocks[i].prices);
        EXPECT_EQ(again[i].volumes, blocks[i].volumes);
    }
}

TEST(Chain, SchemaErrorsNameTheLine) {
    auto line_of = [](const std::string& text) {
        std::stringstream in(text);
        try {
            read_chain(in);
        } catch (const SchemaError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    const std::string h = "valuation_date,maturity_days,spot,rate,dividend_yield,strike,put_price,volume\n";
    EXPECT_NE(line_of(h + "2012-03-01,30,100,0.01,0.02,95,1.2,10\n2012-03-01,30,100,0.01,0.02,95,abc,10\n")
                  .find("line 3"),
              std::string::npos);
    EXPECT_NE(line_of(h + "2012-13-01,30,100,0.01,0.02,95,1.2,10\n").find("line 2"), std::string::npos);
    EXPECT_NE(line_of(h + "2012-02-30,30,100,0.01,0.02,95,1.2,10\n").find("ISO"), std::string::npos);
    EXPECT_NE(line_of(h + "2012-03-01,30,100,0.01,0.02,95,1.2\n").find("8 fields"), std::string::npos);
    EXPECT_NE(line_of(h + "2012-03-01,30,100,0.01,0.02,95,-1.2,3\n").find("put_price"), std::string::npos);
    EXPECT_NE(line_of("date,strike\n").find("line 1"), std::string::npos);
    EXPECT_NE(line_of("").find("header"), std::string::npos);
}

namespace {

OptionBlock raw_block(std::vector<double> k, std::vector<double> p, std::vector<long> v) {
    OptionBlock b;
    b.valuation_date = "2012-01-03";
    b.maturity_days = 30;
    b.t = 30 / 365.0;
    b.spot = 100;
    b.strikes = std::move(k);
    b.prices = std::move(p);
    b.volumes = std::move(v);
    return b;
}

}  // namespace

TEST(Clean, Examples) {
    const auto ok = raw_block({90, 95, 100}, {0.5, 1.0, 2.0}, {1, 1, 1});
    CleanReport r;
    auto c = clean_dataset({ok}, {}, &r);
    EXPECT_EQ(c[0].strikes, ok.strikes);
    EXPECT_EQ(r.total(), 0u);

    c = clean_dataset({raw_block({90, 95, 100, 105}, {0.5, 1.0, 0.9, 3.0}, {1, 1, 1, 1})}, {}, &r);
    EXPECT_EQ(c[0].strikes, (std::vector<double>{90, 95, 105}));
    EXPECT_EQ(r.non_monotone, 1u);

    CleanOptions hi;
    hi.keep_lower_strike = false;
    c = clean_dataset({raw_block({90, 95, 100, 105}, {0.5, 1.0, 0.9, 3.0}, {1, 1, 1, 1})}, hi, &r);
    EXPECT_EQ(c[0].strikes, (std::vector<double>{90, 100, 105}));

    c = clean_dataset({raw_block({90, 95, 100}, {0.5, 1.0, 2.0}, {0, 4, 1})}, {}, &r);
    EXPECT_EQ(c[0].strikes, (std::vector<double>{95, 100}));
    EXPECT_EQ(r.low_volume, 1u);

    c = clean_dataset({raw_block({90}, {0.5}, {0})}, {}, &r);
    EXPECT_TRUE(c.empty());
    EXPECT_EQ(r.empty_blocks, 1u);
}

TEST(Loo, BlackScholesChainIsRecoveredExactly) {
    SynthChainSpec s;
    s.model = "bs";
    s.sigma = 0.22;
    s.days = 2;
    s.maturities = {30, 120};
    s.quotes = 6;
    const auto blocks = synth_chain(s);
    const auto r = loo_experiment(blocks, {parse_estimator("bs")});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].report.failures, 0u);
    EXPECT_EQ(r[0].report.all.n_points, 24u);
    for (const auto& p : r[0].points) EXPECT_LE(p.error, 1e-8);
    EXPECT_LE(r[0].report.in_range.n_points, r[0].report.all.n_points);
    EXPECT_EQ(r[0].report.in_range.n_points, 16u);  // the two end strikes of each block are out of range
}

TEST(Loo, SerialAndParallelAgreeAndFilteringIsMonotone) {
    SynthChainSpec s;
    s.model = "vg";
    s.vg = {-0.1, 0.25, 3.0};
    s.days = 1;
    s.maturities = {30, 60, 90};
    std::vector<OptionBlock> blocks = synth_chain(s);
    // blocks of 3, 5 and 8 quotes
    blocks[0].strikes.resize(3);
    blocks[0].prices.resize(3);
    blocks[0].volumes.resize(3);
    blocks[1].strikes.resize(5);
    blocks[1].prices.resize(5);
    blocks[1].volumes.resize(5);
    const std::vector<Estimator> ests{parse_estimator("bs"), parse_estimator("hermite:p:1")};
    LooOptions o;
    o.exec = Exec::serial;
    const auto a = loo_experiment(blocks, ests, o);
    o.exec = Exec::parallel;
    const auto b = loo_experiment(blocks, ests, o);
    for (std::size_t e = 0; e < ests.size(); ++e) {
        ASSERT_EQ(a[e].points.size(), b[e].points.size());
        for (std::size_t i = 0; i < a[e].points.size(); ++i) EXPECT_EQ(a[e].points[i].error, b[e].points[i].error);
        EXPECT_EQ(a[e].report.all.values, b[e].report.all.values);
    }
    std::size_t prev = SIZE_MAX;
    for (int m = 1; m <= 8; ++m) {
        o.min_block_size = m;
        const auto r = loo_experiment(blocks, {ests[0]}, o);
        EXPECT_LE(r[0].report.all.n_points, prev);
        prev = r[0].report.all.n_points;
    }
    EXPECT_EQ(prev, 0u);
}

TEST(Loo, FailuresAreCountedNotDropped) {
    SynthChainSpec s;
    s.model = "bs";
    s.days = 1;
    s.maturities = {60};
    s.quotes = 4;
    const auto blocks = synth_chain(s);
    // 8 parameters on three quotes, with a flat stretch of prices
    auto bad = blocks;
    bad[0].prices[1] = bad[0].prices[0];
    const auto r = loo_experiment(bad, {parse_estimator("hermite:free:6")});
    EXPECT_EQ(r[0].report.failures + r[0].report.all.n_points, 4u);
}

TEST(Loo, RejectsUncleanBlocks) {
    auto b = raw_block({90, 95, 100}, {0.5, 1.0, 0.7}, {1, 1, 1});
    EXPECT_THROW(loo_experiment({b}, {parse_estimator("bs")}), DomainError);
}

TEST(Format, ThreeSignificantDigits) {
    EXPECT_EQ(fmt_num(17.601), "17.6");
    EXPECT_EQ(fmt_num(100.0), "100");
    EXPECT_EQ(fmt_num(33.0), "33.0");
    EXPECT_EQ(fmt_num(0.00215), "0.00215");
    EXPECT_EQ(fmt_num(9.996), "10.0");
    EXPECT_EQ(fmt_num(0.0796557), "0.0797");
    EXPECT_EQ(fmt_num(-0.0505), "-0.0505");
    EXPECT_EQ(fmt_num(0.0), "0");
    EXPECT_EQ(fmt_num(1.5e-9), "1.50e-09");
    EXPECT_EQ(fmt_num(0.1, true), "0.10000000000000001");
}

TEST(Format, PanelsHaveTableLayout) {
    TextTable t;
    t.header = {"q", "a", "bb"};
    t.rows = {{"25%", "1.00", "2"}, {"50%", "10.0", "300"}};
    EXPECT_EQ(render_delimited(t), "q,a,bb\n25%,1.00,2\n50%,10.0,300\n");
    EXPECT_EQ(render_text(t), "q       a   bb\n--------------\n25%  1.00    2\n50%  10.0  300\n");
}
