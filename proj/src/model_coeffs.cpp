#include "rnd/model_coeffs.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "rnd/errors.hpp"
#include "rnd/quadrature.hpp"
#include "rnd/specfun.hpp"

namespace rnd {

GaussianProduct gaussian_product(double mu1, double s1, double mu2, double s2) {
    if (!(s1 > 0.0) || !(s2 > 0.0)) throw DomainError("gaussian_product: sigmas must be positive");
    const double p1 = 1.0 / (s1 * s1), p2 = 1.0 / (s2 * s2);
    const double var = 1.0 / (p1 + p2);
    const double mu = var * (mu1 * p1 + mu2 * p2);
    const double c = -0.5 * (mu1 * mu1 * p1 + mu2 * mu2 * p2 - mu * mu / var);
    return {mu, std::sqrt(var), c};
}

namespace {

std::vector<double> vg_coeffs_rule(const VgParams& p, double t, double a, double b, int n,
                                   const QuadRule& rule) {
    const double eta = vg_drift(p);
    std::vector<double> acc(n + 1, 0.0), e(n + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double s = rule.x[i] / p.alpha;
        const double s2 = p.sigma * std::sqrt(s) / a;
        const double m2 = (eta * t + p.theta * s - b) / a;
        const auto gp = gaussian_product(m2, s2, 0.0, 1.0);
        const double pre = (gp.sigma / s2) * std::exp(gp.c);
        // e_k = E He_k(m + sd Z), m = sqrt2 mu, sd^2 = 2 sigma^2
        const double m = std::numbers::sqrt2 * gp.mu;
        const double q = 2.0 * gp.sigma * gp.sigma - 1.0;
        e[0] = 1.0;
        if (n >= 1) e[1] = m;
        for (int k = 1; k < n; ++k) e[k + 1] = m * e[k] + k * q * e[k - 1];
        for (int k = 0; k <= n; ++k) acc[k] += rule.w[i] * pre * e[k];
    }
    for (int k = 0; k <= n; ++k) acc[k] /= hermite_norm_sq(k);
    return acc;
}

}  // namespace

std::vector<double> vg_coeffs_gamma_measure(const VgParams& p, double t, double a, double b, int n,
                                            const CoeffOptions& opt, double* change) {
    check_vg(p);
    require_vg_l2(p, t);
    if (!(a > 0.0)) throw DomainError("coefficients need a > 0");
    const double ct = p.c() * t;
    auto alpha = vg_coeffs_rule(p, t, a, b, n, gamma_expectation_rule(opt.nodes, ct));
    if (opt.check) {
        const auto fine = vg_coeffs_rule(p, t, a, b, n, gamma_expectation_rule(2 * opt.nodes, ct));
        double d = 0.0;
        for (int k = 0; k <= n; ++k) d = std::max(d, std::fabs(fine[k] - alpha[k]));
        if (change) *change = d;
        alpha = fine;
    } else if (change) {
        *change = 0.0;
    }
    return alpha;
}

std::vector<double> heston_coeffs_fourier(const HestonParams& p, double t, double a, double b, int n,
                                          double* tail) {
    check_heston(p);
    if (!(a > 0.0)) throw DomainError("coefficients need a > 0");
    // past this point every h_k, k <= n, is below 1e-16 of its peak
    const double cut = std::sqrt(2.0 * n + 1.0) + 9.0;
    const int panels = static_cast<int>(std::ceil(cut / 0.25));
    const QuadRule rule = composite_gauss_legendre(0.0, cut, panels);
    std::vector<double> acc(n + 1, 0.0);
    double h[kMaxHermiteOrder + 1];
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double xi = rule.x[i];
        const std::complex<double> phi =
            std::exp(std::complex<double>(0.0, -xi * b / a)) * heston_cf(p, t, xi / a);
        hermite_fn_all(n, xi, h);
        for (int k = 0; k <= n; ++k) {
            double g = (k % 2 == 0) ? phi.real() : phi.imag();
            if ((k / 2) % 2 == 1) g = -g;
            acc[k] += rule.w[i] * g * h[k];
        }
    }
    if (tail) {
        const std::complex<double> phi = heston_cf(p, t, cut / a);
        double hmax = 0.0;
        hermite_fn_all(n, cut, h);
        for (int k = 0; k <= n; ++k) hmax = std::max(hmax, std::fabs(h[k]) / std::sqrt(hermite_norm_sq(k)));
        *tail = std::abs(phi) * hmax;
    }
    const double s2p = std::sqrt(2.0 * std::numbers::pi);
    for (int k = 0; k <= n; ++k) acc[k] *= 2.0 / (s2p * hermite_norm_sq(k));
    return acc;
}

}  // namespace rnd
