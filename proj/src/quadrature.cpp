#include "rnd/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "rnd/errors.hpp"

namespace rnd {

QuadRule gamma_expectation_rule(int n, double shape) {
    if (n < 1 || !(shape > 0.0)) throw DomainError("gamma_expectation_rule: bad arguments");
    const double al = shape - 1.0;
    Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 1);
    for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + al + 1.0;
    for (int i = 1; i < n; ++i) sub(i - 1) = std::sqrt(i * (i + al));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw DomainError("gamma_expectation_rule: eigen solve failed");
    QuadRule q;
    q.x.resize(n);
    q.w.resize(n);
    for (int i = 0; i < n; ++i) {
        q.x[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        q.w[i] = v * v;
    }
    return q;
}

QuadRule composite_gauss_legendre(double lo, double hi, int panels) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    const auto& ab = GL::abscissa();
    const auto& wt = GL::weights();
    QuadRule q;
    q.x.reserve(20 * panels);
    q.w.reserve(20 * panels);
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = lo + (p + 0.5) * h, r = 0.5 * h;
        for (std::size_t i = 0; i < ab.size(); ++i) {
            if (ab[i] == 0.0) {
                q.x.push_back(c);
                q.w.push_back(wt[i] * r);
                continue;
            }
            q.x.push_back(c - r * ab[i]);
            q.w.push_back(wt[i] * r);
            q.x.push_back(c + r * ab[i]);
            q.w.push_back(wt[i] * r);
        }
    }
    return q;
}

QuadRule exp_sinh_rule(double scale, double step, double tau_lo, double tau_hi) {
    QuadRule q;
    const double hp = 0.5 * std::numbers::pi;
    const int lo = static_cast<int>(std::floor(tau_lo / step));
    const int hi = static_cast<int>(std::ceil(tau_hi / step));
    for (int j = lo; j <= hi; ++j) {
        const double tau = j * step;
        const double x = scale * std::exp(hp * std::sinh(tau));
        const double w = step * x * hp * std::cosh(tau);
        if (x == 0.0 || !std::isfinite(x) || !std::isfinite(w)) continue;
        q.x.push_back(x);
        q.w.push_back(w);
    }
    return q;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol,
                 double* err) {
    double e = 0.0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, tol, &e);
    if (err) *err = e;
    return v;
}

double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& cuts,
                        double tol) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += integrate(f, cuts[i], cuts[i + 1], tol);
    return s;
}

}  // namespace rnd
