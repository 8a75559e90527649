#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rnd/calib.hpp"
#include "rnd/errors.hpp"
#include "rnd/experiments.hpp"
#include "rnd/quadrature.hpp"
#include "rnd/stats.hpp"

using namespace rnd;

namespace {

OptionBlock make_block(const std::vector<double>& ks, double t, double spot = 1.0, double r = 0.0, double q = 0.0) {
    OptionBlock b;
    b.valuation_date = "2021-03-04";
    b.maturity_days = static_cast<int>(std::lround(t * 365));
    b.t = t;
    b.spot = spot;
    b.rate = r;
    b.dividend_yield = q;
    b.strikes = ks;
    b.volumes.assign(ks.size(), 10);
    return b;
}

std::vector<double> bs_prices(const OptionBlock& b, double sigma) {
    std::vector<double> out;
    for (double k : b.strikes) {
        PutSpec s = b.spec();
        s.k = k;
        out.push_back(bs_put(s, sigma));
    }
    return out;
}

double mean_err(const std::vector<double>& m, const std::vector<double>& o) {
    const auto e = rel_errors(m, o);
    return l1_norm(e) / static_cast<double>(e.size());
}

}  // namespace

TEST(RelErrors, Basics) {
    EXPECT_EQ(rel_errors({1.1, 0.9}, {1.0, 1.0}), (std::vector<double>{std::fabs(1.1 - 1.0), std::fabs(0.9 - 1.0)}));
    EXPECT_THROW(rel_errors({1.0}, {0.0}), DomainError);
    EXPECT_THROW(rel_errors({1.0, 2.0}, {1.0}), DomainError);
}

TEST(FitBs, RecoversVolatility) {
    auto b = make_block(synth_strikes(11, 12, 80, 120), 0.4, 100.0, 0.02, 0.01);
    b.prices = bs_prices(b, 0.23);
    const auto f = fit_bs(b);
    EXPECT_NEAR(f.sigma, 0.23, 1e-8);
    EXPECT_LE(f.result.objective, 1e-7);
    EXPECT_TRUE(f.result.converged);
}

TEST(FitHermite, OrderZeroRecoversBlackScholes) {
    auto b = make_block(synth_strikes(5), 1.0);
    b.prices = bs_prices(b, 0.3);
    const auto f = fit_hermite(b, 0, Flavor::p);
    EXPECT_NEAR(f.model.a, 0.3, 1e-6);
    EXPECT_LE(mean_err(hermite_put_ladder(f.model, b.spec(), b.strikes), b.prices), 1e-7);
}

TEST(FitHermite, AlphaIsScaleEquivariant) {
    auto b = make_block(synth_strikes(8), 1.0);
    b.prices = heston_put_ladder(HestonParams{}, b.spec(), b.strikes);
    for (Flavor fl : {Flavor::p, Flavor::free}) {
        const auto a1 = fit_hermite_alpha(b, 0.27, -0.036, 3, fl).alpha;
        auto b2 = b;
        for (auto& p : b2.prices) p *= 3.5;
        const auto a2 = fit_hermite_alpha(b2, 0.27, -0.036, 3, fl).alpha;
        for (std::size_t k = 0; k < a1.size(); ++k) EXPECT_NEAR(a2[k], 3.5 * a1[k], 1e-9 * (1 + std::fabs(a2[k])));
    }
}

TEST(FitHermite, AlphaMinimizesLeastSquares) {
    auto b = make_block(synth_strikes(9), 1.0);
    b.prices = vg_put_ladder(VgParams{}, b.spec(), b.strikes);
    const double a = 0.3, bb = -0.045;
    const auto al = fit_hermite_alpha(b, a, bb, 2, Flavor::p).alpha;
    auto ss = [&](const std::vector<double>& c) {
        const auto m = hermite_put_ladder(HermiteModel{Flavor::p, a, bb, c}, b.spec(), b.strikes);
        double s = 0.0;
        for (std::size_t j = 0; j < m.size(); ++j) s += std::pow(m[j] / b.prices[j] - 1.0, 2);
        return s;
    };
    const double s0 = ss(al);
    for (std::size_t k = 0; k < al.size(); ++k)
        for (double d : {-1e-4, 1e-4}) {
            auto c = al;
            c[k] += d;
            EXPECT_GT(ss(c), s0);
        }
}

TEST(FitHermite, MartingaleFlavorHonoursConstraints) {
    auto b = make_block(synth_strikes(4), 1.0);
    b.prices = heston_put_ladder(HestonParams{}, b.spec(), b.strikes);
    const auto f = fit_hermite(b, 4, Flavor::m);
    auto dens = [&](double x) { return eval_model(f.model, x); };
    EXPECT_NEAR(integrate(dens, -10, 10, 1e-13), 1.0, 1e-9);
    EXPECT_NEAR(integrate([&](double x) { return std::exp(x) * dens(x); }, -10, 10, 1e-13), 1.0, 1e-9);
    EXPECT_NEAR(f.model.b, -f.model.a * f.model.a / 2, 1e-15);
    EXPECT_LE(f.result.objective, f.result.start_objective);
}

TEST(FitHermite, OverfitFlag) {
    auto b = make_block({0.9, 1.0, 1.1}, 0.5);
    b.prices = bs_prices(b, 0.2);
    EXPECT_TRUE(fit_hermite(b, 3, Flavor::free).result.overfit);  // 6 parameters, 3 quotes
    EXPECT_FALSE(fit_hermite(b, 0, Flavor::p).result.overfit);
}

TEST(FitVg, RecoversGeneratingParameters) {
    auto b = make_block(synth_strikes(3), 0.5);
    const VgParams truth{-0.15, 0.2, 1.5};
    b.prices = vg_put_ladder(truth, b.spec(), b.strikes);
    const auto f = fit_vg(b);
    EXPECT_LT(f.result.objective, f.result.start_objective);
    EXPECT_LE(f.result.objective / b.size(), 1e-8);
    EXPECT_NEAR(f.params.theta, truth.theta, 1e-4);
    EXPECT_NEAR(f.params.sigma, truth.sigma, 1e-4);
    EXPECT_NEAR(f.params.alpha, truth.alpha, 1e-3);
    EXPECT_TRUE(f.result.admissible);
}

TEST(FitHeston, ReducesObjectiveAndFitsClosely) {
    auto b = make_block(synth_strikes(3), 0.5);
    const HestonParams truth{0.03, 2.0, 0.06, 0.4, -0.6};
    b.prices = heston_put_ladder(truth, b.spec(), b.strikes);
    const auto f = fit_heston(b);
    EXPECT_LT(f.result.objective, 0.01 * f.result.start_objective);
    EXPECT_LE(f.result.objective / b.size(), 5e-4);
    EXPECT_LT(std::fabs(f.params.rho), 1.0);
    EXPECT_EQ(f.result.names.size(), 5u);
}

TEST(PriceFit, HestonSyntheticOrderThree) {
    const auto k = synth_strikes(1);
    const auto target = heston_put_ladder(HestonParams{}, PutSpec{}, k);
    const auto r = price_fit_experiment(k, target, 1.0, 3, Flavor::p);
    EXPECT_LE(r.errors.mean, 0.002);
    EXPECT_LE(r.max_error, 0.005);
}

TEST(PriceFit, VgSyntheticOrderOne) {
    const auto k = synth_strikes(1);
    const auto target = vg_put_ladder(VgParams{}, PutSpec{}, k);
    const auto r = price_fit_experiment(k, target, 1.0, 1, Flavor::p);
    EXPECT_GE(r.errors.mean, 0.02);
    EXPECT_LE(r.errors.mean, 0.08);
}

TEST(Estimators, ParseAndCount) {
    EXPECT_EQ(parse_estimator("bs").parameter_count(), 1);
    EXPECT_EQ(parse_estimator("vg").parameter_count(), 3);
    EXPECT_EQ(parse_estimator("heston").parameter_count(), 5);
    EXPECT_EQ(parse_estimator("hermite:free:2").parameter_count(), 5);
    EXPECT_EQ(parse_estimator("hermite:p:3").parameter_count(), 5);
    EXPECT_EQ(parse_estimator("hermite:m:5").parameter_count(), 5);
    EXPECT_EQ(parse_estimator("hermite:m:5").name(), "hermite:m:5");
    for (const char* bad : {"", "sabr", "hermite:p", "hermite:x:2", "hermite:p:-1", "hermite:m:0", "hermite:p:2x"})
        EXPECT_THROW(parse_estimator(bad), SchemaError) << bad;
}

TEST(Estimators, CalibratedPricesUseBlockCarry) {
    auto b = make_block(synth_strikes(2, 10, 90, 115), 0.25, 100.0, 0.03, 0.01);
    b.prices = bs_prices(b, 0.18);
    const auto f = calibrate(parse_estimator("bs"), b);
    const auto p = f.price(b, {100.0});
    PutSpec s = b.spec();
    s.k = 100.0;
    EXPECT_NEAR(p[0], bs_put(s, 0.18), 1e-9);
}
