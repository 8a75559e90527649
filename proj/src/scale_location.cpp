#include "rnd/scale_location.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "rnd/errors.hpp"
#include "rnd/model_coeffs.hpp"
#include "rnd/nelder_mead.hpp"
#include "rnd/quadrature.hpp"
#include "rnd/specfun.hpp"

namespace rnd {

CoeffSource vg_source(const VgParams& p, double t) {
    require_vg_l2(p, t);
    CoeffSource s;
    s.coeffs = [p, t](double a, double b, int n) {
        CoeffOptions o;
        o.check = false;
        return vg_coeffs_gamma_measure(p, t, a, b, n, o);
    };
    const auto mo = vg_log_return_moments(p, t);
    const double kink = vg_drift(p) * t;
    auto f2 = [&](double x) {
        const double v = vg_log_return_density(p, t, x);
        return v * v;
    };
    const double w = 40.0 * mo.std;
    s.norm_sq = integrate_pieces(f2, {kink - w, kink, kink + w}, 1e-12);
    return s;
}

CoeffSource heston_source(const HestonParams& p, double t) {
    check_heston(p);
    CoeffSource s;
    s.coeffs = [p, t](double a, double b, int n) { return heston_coeffs_fourier(p, t, a, b, n); };
    // Plancherel: ||f||^2 = (1/pi) int_0^inf |psi|^2
    auto g = [&](double xi) { return std::norm(heston_cf(p, t, xi)); };
    s.norm_sq = integrate(g, 0.0, std::numeric_limits<double>::infinity(), 1e-12) / std::numbers::pi;
    return s;
}

CoeffSource grid_source(const DensityGrid& g) {
    CoeffSource s;
    s.coeffs = [g](double a, double b, int n) { return coeffs_from_grid(g, a, b, n); };
    s.norm_sq = std::pow(grid_moments(g).l2, 2);
    return s;
}

CoeffSource callable_source(const std::function<double(double)>& f, double lo, double hi,
                            const std::vector<double>& kinks) {
    CoeffSource s;
    s.coeffs = [f, kinks](double a, double b, int n) { return coeffs_from_density(f, a, b, n, kinks); };
    std::vector<double> cuts{lo};
    for (double k : kinks)
        if (k > lo && k < hi) cuts.push_back(k);
    cuts.push_back(hi);
    s.norm_sq = integrate_pieces([&](double x) { return f(x) * f(x); }, cuts, 1e-12);
    return s;
}

double objective_j(const CoeffSource& src, int n, Flavor flavor, double a, double b) {
    if (!(a > 0.0)) return std::numeric_limits<double>::infinity();
    const auto alpha = src.coeffs(a, b, n);
    std::vector<double> beta = alpha;
    if (flavor == Flavor::m)
        beta = constrained_project(alpha, martingale_constraints(a, b, n), hermite_norms(n));
    return l2_error_sq(src.norm_sq, a, alpha, beta);
}

JGradient objective_j_gradient(const CoeffSource& src, int n, Flavor flavor, double a, double b) {
    const auto ext = src.coeffs(a, b, n + 2);
    const auto cn = hermite_norms(n + 2);
    std::vector<double> g(n + 3);
    for (int k = 0; k <= n + 2; ++k) g[k] = ext[k] * cn[k];
    const int n1 = n + 1;
    Eigen::VectorXd al(n1), da(n1), db(n1), c(n1);
    for (int k = 0; k <= n; ++k) {
        const double gm1 = k >= 1 ? g[k - 1] : 0.0;
        const double gm2 = k >= 2 ? g[k - 2] : 0.0;
        c(k) = cn[k];
        al(k) = ext[k];
        // h_k' = (k h_{k-1} - h_{k+1})/sqrt2 and x h_k' = (k(k-1) h_{k-2} - h_k - h_{k+2})/2
        da(k) = -(k * (k - 1.0) * gm2 - g[k] - g[k + 2]) / (2.0 * a) / cn[k];
        db(k) = -(k * gm1 - g[k + 1]) / (std::numbers::sqrt2 * a) / cn[k];
    }
    Eigen::VectorXd be = al, dba = da, dbb = db;
    if (flavor == Flavor::m) {
        const auto cs = martingale_constraints(a, b, n);
        const Eigen::MatrixXd& L = cs.L;
        const Eigen::VectorXd winv = c.cwiseInverse();
        const Eigen::MatrixXd lw = L * winv.asDiagonal();
        const Eigen::Matrix2d M = lw * L.transpose();
        const Eigen::Matrix2d Mi = M.inverse();
        const Eigen::Vector2d lam = Mi * (L * al - cs.v);
        be = al - winv.asDiagonal() * (L.transpose() * lam);
        const auto wa = martingale_row_da(a, b, n);
        auto dir = [&](const Eigen::VectorXd& dal, const Eigen::MatrixXd& dL) {
            const Eigen::Vector2d dr = dL * al + L * dal;
            const Eigen::Matrix2d dM = dL * winv.asDiagonal() * L.transpose() + lw * dL.transpose();
            const Eigen::Vector2d dlam = Mi * (dr - dM * lam);
            return Eigen::VectorXd(dal - winv.asDiagonal() * (dL.transpose() * lam + L.transpose() * dlam));
        };
        Eigen::MatrixXd dLa = Eigen::MatrixXd::Zero(2, n1), dLb = Eigen::MatrixXd::Zero(2, n1);
        for (int k = 0; k <= n; ++k) {
            dLa(1, k) = wa[k];
            dLb(1, k) = L(1, k);
        }
        dba = dir(da, dLa);
        dbb = dir(db, dLb);
    }
    double s = 0.0, dsa = 0.0, dsb = 0.0;
    for (int k = 0; k <= n; ++k) {
        s += c(k) * be(k) * (be(k) - 2.0 * al(k));
        dsa += 2.0 * c(k) * ((be(k) - al(k)) * dba(k) - da(k) * be(k));
        dsb += 2.0 * c(k) * ((be(k) - al(k)) * dbb(k) - db(k) * be(k));
    }
    JGradient r;
    r.j = std::max(0.0, src.norm_sq + s / a);
    r.da = -s / (a * a) + dsa / a;
    r.db = dsb / a;
    return r;
}

HermiteModel model_at(const CoeffSource& src, int n, Flavor flavor, double a, double b) {
    return make_model(flavor, a, b, src.coeffs(a, b, n));
}

namespace {

// Minimizes over the free variables: v = {a} (p, m) or {a, b} (free).
struct Reduced {
    const CoeffSource& src;
    int n;
    Flavor flavor;
    std::pair<double, double> ab(const std::vector<double>& v) const {
        if (flavor == Flavor::free) return {v[0], v[1]};
        return {v[0], -0.5 * v[0] * v[0]};
    }
    double value(const std::vector<double>& v) const {
        const auto [a, b] = ab(v);
        return objective_j(src, n, flavor, a, b);
    }
    std::vector<double> grad(const std::vector<double>& v, double* j = nullptr) const {
        const auto [a, b] = ab(v);
        const auto g = objective_j_gradient(src, n, flavor, a, b);
        if (j) *j = g.j;
        if (flavor == Flavor::free) return {g.da, g.db};
        return {g.da - a * g.db};
    }
};

// Quasi-Newton (BFGS) with Armijo backtracking on the analytic gradient.
NmResult bfgs(const Reduced& r, std::vector<double> x, const ScaleOptOptions& opt) {
    const std::size_t d = x.size();
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(d, d) * 1e-2;
    NmResult res;
    double f;
    auto gv = r.grad(x, &f);
    Eigen::VectorXd g = Eigen::Map<Eigen::VectorXd>(gv.data(), d);
    while (res.iterations < opt.max_iter) {
        ++res.iterations;
        Eigen::VectorXd p = -H * g;
        if (p.dot(g) >= 0.0) {
            H = Eigen::MatrixXd::Identity(d, d) * 1e-2;
            p = -H * g;
        }
        double step = 1.0, fn = 0.0;
        std::vector<double> xn(d);
        bool ok = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < d; ++i) xn[i] = x[i] + step * p(i);
            if (xn[0] > 0.0) {
                fn = r.value(xn);
                if (std::isfinite(fn) && fn <= f + 1e-4 * step * g.dot(p)) {
                    ok = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!ok) break;
        auto gn = r.grad(xn);
        Eigen::VectorXd g2 = Eigen::Map<Eigen::VectorXd>(gn.data(), d);
        Eigen::VectorXd s = step * p, y = g2 - g;
        const double sy = s.dot(y);
        if (sy > 1e-300) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
            H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
        }
        const double df = f - fn;
        x = xn;
        f = fn;
        g = g2;
        if (s.lpNorm<Eigen::Infinity>() < opt.xtol && df < opt.ftol) {
            res.converged = true;
            break;
        }
    }
    res.x = x;
    res.f = f;
    return res;
}

}  // namespace

ScaleOptResult optimize_scale_location(const CoeffSource& src, int n, Flavor flavor,
                                       ScaleLocation init, const ScaleOptOptions& opt) {
    if (!(init.a > 0.0)) throw DomainError("optimize_scale_location: initial a must be positive");
    const Reduced r{src, n, flavor};
    std::vector<double> x0{init.a};
    if (flavor == Flavor::free) x0.push_back(init.b);
    ScaleOptResult out;
    const auto [a0, b0] = r.ab(x0);
    out.j_init = objective_j(src, n, flavor, a0, b0);

    NmResult res;
    if (opt.method == OuterMethod::nelder_mead) {
        NmOptions no;
        no.max_iter = opt.max_iter;
        no.xtol = opt.xtol;
        no.ftol = opt.ftol;
        res = nelder_mead([&](const std::vector<double>& v) { return r.value(v); }, x0, no);
    } else {
        res = bfgs(r, x0, opt);
    }
    std::vector<double> best = res.x;
    if (!(res.f <= out.j_init)) best = x0;
    const auto [a, b] = r.ab(best);
    out.model = model_at(src, n, flavor, a, b);
    out.j = objective_j(src, n, flavor, a, b);
    out.iterations = res.iterations;
    out.converged = res.converged;

    if (opt.check_hessian) {
        // second derivatives by central differences of the analytic gradient
        const std::size_t d = best.size();
        Eigen::MatrixXd Hs(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            const double h = 1e-5 * std::max(1.0, std::fabs(best[i]));
            auto xp = best, xm = best;
            xp[i] += h;
            xm[i] -= h;
            const auto gp = r.grad(xp), gm = r.grad(xm);
            for (std::size_t j = 0; j < d; ++j) Hs(j, i) = (gp[j] - gm[j]) / (2.0 * h);
        }
        const Eigen::MatrixXd sym = 0.5 * (Hs + Hs.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
        out.hessian_checked = true;
        out.hessian_pd = es.eigenvalues().minCoeff() > 0.0;
    }
    return out;
}

}  // namespace rnd
