#include "rnd/calib.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "rnd/errors.hpp"
#include "rnd/pricing.hpp"

namespace rnd {

OptionBlock OptionBlock::without(std::size_t i) const {
    OptionBlock b = *this;
    b.strikes.erase(b.strikes.begin() + static_cast<long>(i));
    b.prices.erase(b.prices.begin() + static_cast<long>(i));
    if (i < b.volumes.size()) b.volumes.erase(b.volumes.begin() + static_cast<long>(i));
    return b;
}

std::vector<double> rel_errors(const std::vector<double>& model, const std::vector<double>& observed) {
    if (model.size() != observed.size()) throw DomainError("rel_errors: size mismatch");
    std::vector<double> e(model.size());
    for (std::size_t j = 0; j < model.size(); ++j) {
        if (!(observed[j] > 0.0)) throw DomainError("rel_errors: observed prices must be positive");
        e[j] = std::fabs(model[j] / observed[j] - 1.0);
    }
    return e;
}

double l1_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::fabs(x);
    return s;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_block(const OptionBlock& b) {
    if (b.size() == 0) throw DomainError("calibration block is empty");
    if (b.prices.size() != b.size()) throw DomainError("calibration block: strikes and prices differ in length");
    if (!(b.t > 0.0) || !(b.spot > 0.0)) throw DomainError("calibration block: t and spot must be positive");
    for (double p : b.prices)
        if (!(p > 0.0)) throw DomainError("calibration block: prices must be positive");
}

void fill_range(CalibrationResult& r, const OptionBlock& b) {
    r.k_min = *std::min_element(b.strikes.begin(), b.strikes.end());
    r.k_max = *std::max_element(b.strikes.begin(), b.strikes.end());
}

double finite_l1(const std::vector<double>& model, const std::vector<double>& observed) {
    double s = 0.0;
    for (std::size_t j = 0; j < model.size(); ++j) {
        if (!std::isfinite(model[j])) return kInf;
        s += std::fabs(model[j] / observed[j] - 1.0);
    }
    return s;
}

Eigen::MatrixXd design(const OptionBlock& block, double a, double b, int n) {
    Eigen::MatrixXd d(block.size(), n + 1);
    PutSpec s = block.spec();
    for (std::size_t j = 0; j < block.size(); ++j) {
        s.k = block.strikes[j];
        const auto row = hermite_basis_puts(n, a, b, s);
        for (int k = 0; k <= n; ++k) d(static_cast<Eigen::Index>(j), k) = row[k] / block.prices[j];
    }
    return d;
}

NmResult nm_with_restarts(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& x0,
                          const FitOptions& opt) {
    NmResult r = nelder_mead(f, x0, opt.nm);
    for (int i = 0; i < opt.restarts; ++i) {
        NmResult s = nelder_mead(f, r.x, opt.nm);
        const bool better = s.f < r.f - 1e-12 * (1.0 + std::fabs(r.f));
        s.iterations += r.iterations;
        s.evaluations += r.evaluations;
        if (s.f <= r.f) r = s;
        else {
            r.iterations = s.iterations;
            r.evaluations = s.evaluations;
        }
        if (!better) break;
    }
    return r;
}

}  // namespace

AlphaFit fit_hermite_alpha(const OptionBlock& block, double a, double b, int n, Flavor flavor) {
    check_block(block);
    if (!(a > 0.0)) throw DomainError("fit_hermite_alpha: a must be positive");
    const Eigen::MatrixXd d = design(block, a, b, n);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(d.rows());
    AlphaFit out;
    Eigen::VectorXd x;
    if (flavor != Flavor::m) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(d);
        cod.setThreshold(1e-13);
        out.rank_deficient = cod.rank() < n + 1;
        x = cod.solve(ones);
    } else {
        if (n < 1) throw DomainError("flavor m needs order n >= 1");
        const auto cs = martingale_constraints(a, b, n);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> lc(cs.L);
        const Eigen::VectorXd xp = lc.solve(cs.v);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(cs.L.transpose());
        const Eigen::MatrixXd q = qr.householderQ();
        const Eigen::MatrixXd z = q.rightCols(n + 1 - 2);
        x = xp;
        if (z.cols() > 0) {
            const Eigen::MatrixXd dz = d * z;
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(dz);
            cod.setThreshold(1e-13);
            out.rank_deficient = cod.rank() < z.cols();
            x += z * cod.solve(ones - d * xp);
        }
    }
    out.alpha.assign(x.data(), x.data() + x.size());
    return out;
}

BsFit fit_bs(const OptionBlock& block) {
    check_block(block);
    auto obj = [&](double sigma) {
        std::vector<double> m(block.size());
        PutSpec s = block.spec();
        for (std::size_t j = 0; j < block.size(); ++j) {
            s.k = block.strikes[j];
            m[j] = bs_put(s, sigma);
        }
        return finite_l1(m, block.prices);
    };
    NmOptions no;
    no.xtol = 1e-13;
    no.ftol = 1e-11;
    no.max_iter = 1000;
    const auto r = nelder_mead([&](const std::vector<double>& v) { return obj(std::exp(v[0])); },
                               {std::log(0.2)}, no);
    BsFit f;
    f.sigma = std::exp(r.x[0]);
    f.result.names = {"sigma"};
    f.result.params = {f.sigma};
    f.result.objective = obj(f.sigma);
    f.result.start_objective = obj(0.2);
    f.result.iterations = r.iterations;
    f.result.converged = r.converged;
    f.result.overfit = block.size() < 1;
    fill_range(f.result, block);
    return f;
}

namespace {

double hermite_objective(const OptionBlock& block, int n, Flavor flavor, double a, double b,
                         std::vector<double>* alpha = nullptr) {
    if (!(a > 0.0) || !std::isfinite(b)) return kInf;
    try {
        const auto fit = fit_hermite_alpha(block, a, b, n, flavor);
        const Eigen::MatrixXd d = design(block, a, b, n);
        const Eigen::VectorXd al = Eigen::Map<const Eigen::VectorXd>(fit.alpha.data(), n + 1);
        const Eigen::VectorXd ratio = d * al;
        double s = 0.0;
        for (Eigen::Index j = 0; j < ratio.size(); ++j) {
            if (!std::isfinite(ratio(j))) return kInf;
            s += std::fabs(ratio(j) - 1.0);
        }
        if (alpha) *alpha = fit.alpha;
        return s;
    } catch (const DomainError&) {
        return kInf;
    }
}

}  // namespace

HermiteFit fit_hermite(const OptionBlock& block, int n, Flavor flavor, const FitOptions& opt) {
    check_block(block);
    if (n < 0 || n > 30) throw DomainError("fit_hermite: order out of range");
    const double sigma = fit_bs(block).sigma;
    const double a0 = std::max(sigma * std::sqrt(block.t), 1e-4);
    std::vector<double> x0{a0};
    if (flavor == Flavor::free) x0.push_back(-0.5 * a0 * a0);
    auto ab = [&](const std::vector<double>& v) -> std::pair<double, double> {
        if (flavor == Flavor::free) return {v[0], v[1]};
        return {v[0], -0.5 * v[0] * v[0]};
    };
    auto obj = [&](const std::vector<double>& v) {
        const auto [a, b] = ab(v);
        return hermite_objective(block, n, flavor, a, b);
    };
    const double f0 = obj(x0);
    const auto r = nm_with_restarts(obj, x0, opt);
    const auto best = (r.f <= f0) ? r.x : x0;
    const auto [a, b] = ab(best);
    HermiteFit out;
    std::vector<double> alpha;
    out.result.objective = hermite_objective(block, n, flavor, a, b, &alpha);
    if (!std::isfinite(out.result.objective)) throw DomainError("fit_hermite: no finite objective");
    out.model.flavor = flavor;
    out.model.a = a;
    out.model.b = b;
    out.model.coeffs = alpha;
    out.result.names = {"a", "b"};
    out.result.params = {a, b};
    for (int k = 0; k <= n; ++k) {
        out.result.names.push_back("alpha" + std::to_string(k));
        out.result.params.push_back(alpha[k]);
    }
    out.result.start_objective = f0;
    out.result.iterations = r.iterations;
    out.result.converged = r.converged;
    Estimator e;
    e.kind = Estimator::Kind::hermite;
    e.flavor = flavor;
    e.n = n;
    out.result.overfit = static_cast<int>(block.size()) < e.parameter_count();
    fill_range(out.result, block);
    return out;
}

namespace {

VgParams vg_from(const std::vector<double>& v) { return {v[0], 0.05 + std::exp(v[1]), std::exp(v[2])}; }

bool vg_ok(const VgParams& p) { return p.theta + 0.5 * p.sigma * p.sigma < p.alpha; }

}  // namespace

VgFit fit_vg(const OptionBlock& block, const FitOptions& opt) {
    check_block(block);
    const double big = 1e3 * static_cast<double>(block.size());
    auto obj = [&](const std::vector<double>& v) {
        const VgParams p = vg_from(v);
        if (!vg_ok(p)) return big * (1.0 + p.theta + 0.5 * p.sigma * p.sigma - p.alpha);
        try {
            return finite_l1(vg_put_ladder(p, block.spec(), block.strikes), block.prices);
        } catch (const DomainError&) {
            return kInf;
        }
    };
    const std::vector<double> x0{0.1, std::log(0.3 - 0.05), std::log(2.0)};
    const auto r = nm_with_restarts(obj, x0, opt);
    const double f0 = obj(x0);
    const auto best = (r.f <= f0) ? r.x : x0;
    VgFit out;
    out.params = vg_from(best);
    out.result.names = {"theta", "sigma", "alpha"};
    out.result.params = {out.params.theta, out.params.sigma, out.params.alpha};
    out.result.objective = obj(best);
    out.result.start_objective = f0;
    out.result.iterations = r.iterations;
    out.result.converged = r.converged;
    out.result.admissible = vg_ok(out.params);
    out.result.overfit = block.size() < 3;
    fill_range(out.result, block);
    return out;
}

namespace {

// order of the search vector: v0, theta, rho, kappa, eta
HestonParams heston_from(const std::vector<double>& v) {
    HestonParams p;
    p.v0 = std::exp(v[0]);
    p.theta = std::exp(v[1]);
    p.rho = std::tanh(v[2]);
    p.kappa = std::exp(v[3]);
    p.eta = std::exp(v[4]);
    return p;
}

}  // namespace

HestonFit fit_heston(const OptionBlock& block, const FitOptions& opt) {
    check_block(block);
    auto obj = [&](const std::vector<double>& v) {
        const HestonParams p = heston_from(v);
        if (!(std::fabs(p.rho) < 1.0)) return kInf;
        try {
            return finite_l1(heston_put_ladder(p, block.spec(), block.strikes), block.prices);
        } catch (const DomainError&) {
            return kInf;
        }
    };
    const std::vector<double> x0{std::log(0.02), std::log(0.35), std::atanh(-0.5), std::log(0.5),
                                 std::log(0.3)};
    const auto r = nm_with_restarts(obj, x0, opt);
    const double f0 = obj(x0);
    const auto best = (r.f <= f0) ? r.x : x0;
    HestonFit out;
    out.params = heston_from(best);
    out.result.names = {"v0", "theta", "rho", "kappa", "eta"};
    out.result.params = {out.params.v0, out.params.theta, out.params.rho, out.params.kappa, out.params.eta};
    out.result.objective = obj(best);
    out.result.start_objective = f0;
    out.result.iterations = r.iterations;
    out.result.converged = r.converged;
    out.result.admissible = feller(out.params);
    out.result.overfit = block.size() < 5;
    fill_range(out.result, block);
    return out;
}

std::string Estimator::name() const {
    switch (kind) {
        case Kind::bs: return "bs";
        case Kind::vg: return "vg";
        case Kind::heston: return "heston";
        case Kind::hermite: return "hermite:" + flavor_name(flavor) + ":" + std::to_string(n);
    }
    return "?";
}

int Estimator::parameter_count() const {
    switch (kind) {
        case Kind::bs: return 1;
        case Kind::vg: return 3;
        case Kind::heston: return 5;
        case Kind::hermite:
            if (flavor == Flavor::free) return n + 3;
            if (flavor == Flavor::p) return n + 2;
            return n;
    }
    return 0;
}

Estimator parse_estimator(const std::string& s) {
    Estimator e;
    if (s == "bs") return e;
    if (s == "vg") {
        e.kind = Estimator::Kind::vg;
        return e;
    }
    if (s == "heston") {
        e.kind = Estimator::Kind::heston;
        return e;
    }
    const std::string pre = "hermite:";
    if (s.rfind(pre, 0) == 0) {
        const auto rest = s.substr(pre.size());
        const auto colon = rest.find(':');
        if (colon != std::string::npos) {
            e.kind = Estimator::Kind::hermite;
            e.flavor = parse_flavor(rest.substr(0, colon));
            try {
                std::size_t used = 0;
                e.n = std::stoi(rest.substr(colon + 1), &used);
                if (used == rest.size() - colon - 1 && e.n >= 0 && e.n <= 30 &&
                    !(e.flavor == Flavor::m && e.n < 1))
                    return e;
            } catch (const std::exception&) {
            }
        }
    }
    throw SchemaError("unknown estimator '" + s + "' (bs, vg, heston, hermite:<free|p|m>:<n>)");
}

std::vector<double> FittedEstimator::price(const OptionBlock& block, const std::vector<double>& strikes) const {
    const PutSpec s = block.spec();
    switch (est.kind) {
        case Estimator::Kind::bs: {
            std::vector<double> out(strikes.size());
            for (std::size_t j = 0; j < strikes.size(); ++j) {
                PutSpec sj = s;
                sj.k = strikes[j];
                out[j] = bs_put(sj, sigma);
            }
            return out;
        }
        case Estimator::Kind::vg: return vg_put_ladder(vg, s, strikes);
        case Estimator::Kind::heston: return heston_put_ladder(heston, s, strikes);
        case Estimator::Kind::hermite: return hermite_put_ladder(hermite, s, strikes);
    }
    return {};
}

FittedEstimator calibrate(const Estimator& est, const OptionBlock& block, const FitOptions& opt) {
    FittedEstimator f;
    f.est = est;
    switch (est.kind) {
        case Estimator::Kind::bs: {
            auto r = fit_bs(block);
            f.sigma = r.sigma;
            f.result = r.result;
            break;
        }
        case Estimator::Kind::vg: {
            auto r = fit_vg(block, opt);
            f.vg = r.params;
            f.result = r.result;
            break;
        }
        case Estimator::Kind::heston: {
            auto r = fit_heston(block, opt);
            f.heston = r.params;
            f.result = r.result;
            break;
        }
        case Estimator::Kind::hermite: {
            auto r = fit_hermite(block, est.n, est.flavor, opt);
            f.hermite = r.model;
            f.result = r.result;
            break;
        }
    }
    return f;
}

}  // namespace rnd
