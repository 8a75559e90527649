#include "rnd/hermite.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rnd/errors.hpp"
#include "rnd/quadrature.hpp"
#include "rnd/specfun.hpp"

namespace rnd {

std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::free: return "free";
        case Flavor::p: return "p";
        case Flavor::m: return "m";
    }
    return "?";
}

Flavor parse_flavor(const std::string& s) {
    if (s == "free") return Flavor::free;
    if (s == "p") return Flavor::p;
    if (s == "m") return Flavor::m;
    throw SchemaError("unknown flavor '" + s + "' (expected free, p or m)");
}

double eval_model(const HermiteModel& m, double x) {
    const int n = m.order();
    if (n < 0) return 0.0;
    double h[kMaxHermiteOrder + 1];
    hermite_fn_all(n, (x - m.b) / m.a, h);
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += m.coeffs[k] * h[k];
    return s / m.a;
}

std::vector<double> eval_model(const HermiteModel& m, const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval_model(m, xs[i]);
    return out;
}

std::vector<double> eval_model_parallel(const HermiteModel& m, const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    const long n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[i] = eval_model(m, xs[i]);
    return out;
}

std::vector<double> hermite_norms(int n) {
    std::vector<double> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = hermite_norm_sq(k);
    return c;
}

std::vector<double> constraint_row(double a, double b, int n, ConstraintKind kind) {
    if (!(a > 0.0)) throw DomainError("constraint rows need a > 0");
    const double s2p = std::sqrt(2.0 * std::numbers::pi);
    std::vector<double> r(n + 1);
    if (kind == ConstraintKind::unit_integral) {
        // integral of h_k = sqrt(2 pi) (k-1)!! for even k
        double dfact = 1.0;
        for (int k = 0; k <= n; ++k) {
            if (k % 2) {
                r[k] = 0.0;
            } else {
                if (k >= 2) dfact *= (k - 1);
                r[k] = s2p * dfact;
            }
        }
        return r;
    }
    // integral of exp(a x + b) h_k = sqrt(2 pi) e^{b + a^2/2} E He_k(sqrt2 (Z + a))
    const double pre = s2p * std::exp(b + 0.5 * a * a);
    const double m = std::numbers::sqrt2 * a;
    double pm = 1.0, pk = m;
    r[0] = pre;
    if (n >= 1) r[1] = pre * m;
    for (int k = 2; k <= n; ++k) {
        const double nx = m * pk + (k - 1) * pm;
        pm = pk;
        pk = nx;
        r[k] = pre * pk;
    }
    return r;
}

std::vector<double> martingale_row_da(double a, double b, int n) {
    const double s2p = std::sqrt(2.0 * std::numbers::pi);
    const double pre = s2p * std::exp(b + 0.5 * a * a);
    const double m = std::numbers::sqrt2 * a;
    std::vector<double> P(n + 1), dP(n + 1), r(n + 1);
    P[0] = 1.0;
    dP[0] = 0.0;
    if (n >= 1) {
        P[1] = m;
        dP[1] = std::numbers::sqrt2;
    }
    for (int k = 2; k <= n; ++k) {
        P[k] = m * P[k - 1] + (k - 1) * P[k - 2];
        dP[k] = std::numbers::sqrt2 * P[k - 1] + m * dP[k - 1] + (k - 1) * dP[k - 2];
    }
    for (int k = 0; k <= n; ++k) r[k] = pre * (a * P[k] + dP[k]);
    return r;
}

ConstraintSystem martingale_constraints(double a, double b, int n) {
    ConstraintSystem c;
    c.L.resize(2, n + 1);
    const auto u = constraint_row(a, b, n, ConstraintKind::unit_integral);
    const auto w = constraint_row(a, b, n, ConstraintKind::approx_martingale);
    for (int k = 0; k <= n; ++k) {
        c.L(0, k) = u[k];
        c.L(1, k) = w[k];
    }
    c.v = Eigen::Vector2d(1.0, 1.0);
    return c;
}

std::vector<double> constrained_project(const std::vector<double>& alpha, const ConstraintSystem& c,
                                        const std::vector<double>& norms) {
    const Eigen::Index n1 = static_cast<Eigen::Index>(alpha.size());
    if (c.L.cols() != n1 || static_cast<Eigen::Index>(norms.size()) != n1 || c.v.size() != c.L.rows())
        throw DomainError("constrained_project: dimension mismatch");
    if (c.L.rows() > n1) throw DomainError("constrained_project: more constraints than coefficients");
    // rescale to an orthonormal frame: check alpha = alpha ||h||, hat L = L / ||h||
    Eigen::VectorXd s(n1), ac(n1);
    for (Eigen::Index k = 0; k < n1; ++k) {
        s(k) = std::sqrt(norms[k]);
        ac(k) = alpha[k] * s(k);
    }
    const Eigen::MatrixXd lh = c.L * s.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(lh);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || !(sv(sv.size() - 1) > 1e-12 * sv(0)))
        throw DomainError("constrained_project: constraint rows are rank deficient");
    const Eigen::MatrixXd g = lh * lh.transpose();
    const Eigen::VectorXd lam = g.ldlt().solve(lh * ac - c.v);
    const Eigen::VectorXd bc = ac - lh.transpose() * lam;
    std::vector<double> beta(n1);
    for (Eigen::Index k = 0; k < n1; ++k) beta[k] = bc(k) / s(k);
    return beta;
}

double l2_error_sq(double f_norm_sq, double a, const std::vector<double>& alpha,
                   const std::vector<double>& beta) {
    double s = 0.0;
    for (std::size_t k = 0; k < beta.size(); ++k) {
        const double c = hermite_norm_sq(static_cast<int>(k));
        s += c * beta[k] * (beta[k] - 2.0 * alpha[k]);
    }
    const double e = f_norm_sq + s / a;
    return e < 0.0 ? 0.0 : e;
}

std::vector<double> coeffs_from_density(const std::function<double(double)>& f, double a, double b,
                                        int n, const std::vector<double>& kinks) {
    if (!(a > 0.0)) throw DomainError("coefficients need a > 0");
    // Gaussian envelope of h_k is below 1e-16 of its peak past this point
    const double xmax = std::sqrt(2.0 * n + 1.0) + 9.0;
    std::vector<double> cuts{-xmax};
    for (double y : kinks) {
        const double x = (y - b) / a;
        if (x > -xmax && x < xmax) cuts.push_back(x);
    }
    cuts.push_back(xmax);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> alpha(n + 1);
    for (int k = 0; k <= n; ++k) {
        auto g = [&](double x) { return f(a * x + b) * hermite_fn(k, x); };
        alpha[k] = a * integrate_pieces(g, cuts, 1e-13) / hermite_norm_sq(k);
    }
    return alpha;
}

std::vector<double> coeffs_from_grid(const DensityGrid& g, double a, double b, int n, double* est_err) {
    if (!(a > 0.0)) throw DomainError("coefficients need a > 0");
    const std::size_t npts = g.size();
    std::vector<double> full(n + 1, 0.0), half(n + 1, 0.0);
    double h[kMaxHermiteOrder + 1];
    for (std::size_t i = 0; i < npts; ++i) {
        const double fi = g.f[i];
        if (fi == 0.0) continue;
        hermite_fn_all(n, (g.x(i) - b) / a, h);
        const double wt = (i == 0 || i + 1 == npts) ? 0.5 : 1.0;
        for (int k = 0; k <= n; ++k) full[k] += wt * fi * h[k];
        if (est_err && i % 2 == 0) {
            const double wh = (i == 0 || i + 2 >= npts) ? 0.5 : 1.0;
            for (int k = 0; k <= n; ++k) half[k] += wh * fi * h[k];
        }
    }
    double err = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double c = hermite_norm_sq(k);
        full[k] *= g.dx / c;
        half[k] *= 2.0 * g.dx / c;
        err = std::max(err, std::fabs(full[k] - half[k]));
    }
    if (est_err) *est_err = err;
    return full;
}

ScaleLocation default_scale_location(double mean, double std, ScaleMode mode) {
    if (mode == ScaleMode::moment) {
        if (!(std > 0.0)) throw DomainError("moment mode needs a positive standard deviation");
        return {std, mean};
    }
    if (!(mean < 0.0)) throw DomainError("p mode needs a negative mean of the log-return");
    return {std::sqrt(-2.0 * mean), mean};
}

HermiteModel make_model(Flavor flavor, double a, double b, const std::vector<double>& alpha) {
    HermiteModel m;
    m.flavor = flavor;
    m.a = a;
    m.b = b;
    const int n = static_cast<int>(alpha.size()) - 1;
    if (flavor == Flavor::m)
        m.coeffs = constrained_project(alpha, martingale_constraints(a, b, n), hermite_norms(n));
    else
        m.coeffs = alpha;
    return m;
}

std::string model_to_json(const HermiteModel& m) {
    nlohmann::ordered_json j;
    j["flavor"] = flavor_name(m.flavor);
    j["a"] = m.a;
    j["b"] = m.b;
    j["coeffs"] = m.coeffs;
    return j.dump(2) + "\n";
}

HermiteModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("model file is not valid JSON: ") + e.what());
    }
    HermiteModel m;
    try {
        m.flavor = parse_flavor(j.at("flavor").get<std::string>());
        m.a = j.at("a").get<double>();
        m.b = j.at("b").get<double>();
        m.coeffs = j.at("coeffs").get<std::vector<double>>();
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("model record needs flavor, a, b, coeffs: ") + e.what());
    }
    if (!(m.a > 0.0)) throw DomainError("model record: a must be positive");
    if (m.coeffs.empty() || m.order() > kMaxHermiteOrder)
        throw SchemaError("model record: coeffs must hold 1 to 65 values");
    return m;
}

}  // namespace rnd
