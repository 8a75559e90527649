#include "rnd/vg.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rnd/errors.hpp"
#include "rnd/quadrature.hpp"
#include "rnd/specfun.hpp"

namespace rnd {

void check_vg(const VgParams& p) {
    if (!(p.sigma > 0.0) || !(p.alpha > 0.0) || !std::isfinite(p.theta))
        throw DomainError("VG parameters: need sigma > 0 and alpha > 0");
    if (!(p.theta + 0.5 * p.sigma * p.sigma < p.alpha))
        throw DomainError("VG parameters violate theta + sigma^2/2 < alpha");
}

bool vg_l2_admissible(const VgParams& p, double t) { return p.c() * t > 0.25; }

void require_vg_l2(const VgParams& p, double t) {
    if (!vg_l2_admissible(p, t))
        throw DomainError("VG density not square integrable: c t <= 1/4");
}

namespace detail {

double vg_drift_general(double theta, double sigma, double alpha, double c) {
    const double u = (theta + 0.5 * sigma * sigma) / alpha;
    if (!(u < 1.0)) throw DomainError("VG parameters violate theta + sigma^2/2 < alpha");
    return c * std::log1p(-u);
}

double vg_density_general(double theta, double sigma, double alpha, double c, double t, double x) {
    if (!(t > 0.0)) throw DomainError("VG density: t must be positive");
    const double ct = c * t;
    const double s2 = sigma * sigma;
    const double g2 = theta * theta + 2.0 * alpha * s2;
    const double nu = ct - 0.5;
    const double lpre = std::log(2.0) + ct * std::log(alpha) - std::lgamma(ct) - std::log(sigma) -
                        0.5 * std::log(2.0 * std::numbers::pi);
    const double ax = std::fabs(x);
    if (ax == 0.0) {
        if (nu <= 0.0) return std::numeric_limits<double>::infinity();
        // (|x|/g)^nu K_nu(|x| g / s2) -> Gamma(nu)/2 (2 s2 / g2)^nu
        return std::exp(lpre + std::lgamma(nu) - std::log(2.0) + nu * std::log(2.0 * s2 / g2));
    }
    const double z = ax * std::sqrt(g2) / s2;
    const double k = bessel_k(nu, z);
    if (k == 0.0) return 0.0;
    return std::exp(lpre + x * theta / s2 + nu * (std::log(ax) - 0.5 * std::log(g2)) +
                    std::log(k));
}

}  // namespace detail

double vg_drift(const VgParams& p) {
    check_vg(p);
    return detail::vg_drift_general(p.theta, p.sigma, p.alpha, p.c());
}

double vg_density(const VgParams& p, double t, double x) {
    check_vg(p);
    return detail::vg_density_general(p.theta, p.sigma, p.alpha, p.c(), t, x);
}

double vg_mixture_density(const VgParams& p, double t, double x) {
    check_vg(p);
    if (!(t > 0.0)) throw DomainError("VG density: t must be positive");
    const double ct = p.c() * t;
    if (x == 0.0 && ct <= 0.5) return std::numeric_limits<double>::infinity();
    const double lnorm = ct * std::log(p.alpha) - std::lgamma(ct);
    // s = exp(u): smooth in u, Gaussian-like decay on both sides
    auto f = [&](double u) {
        const double s = std::exp(u);
        if (!(s > 0.0) || !std::isfinite(s)) return 0.0;
        const double sd = p.sigma * std::sqrt(s);
        const double z = (x - p.theta * s) / sd;
        const double l = lnorm + ct * u - p.alpha * s - 0.5 * z * z - std::log(sd) -
                         0.5 * std::log(2.0 * std::numbers::pi);
        return std::isnan(l) ? 0.0 : std::exp(l);
    };
    const double peak = std::log(std::max(ct / p.alpha, 1e-300));
    return integrate(f, -std::numeric_limits<double>::infinity(), peak, 1e-13) +
           integrate(f, peak, std::numeric_limits<double>::infinity(), 1e-13);
}

double vg_log_return_density(const VgParams& p, double t, double x) {
    return vg_density(p, t, x - vg_drift(p) * t);
}

VgMoments vg_log_return_moments(const VgParams& p, double t) {
    const double eta = vg_drift(p);
    const double ct = p.c() * t;
    const double mean = p.theta * ct / p.alpha + eta * t;
    const double var = (p.sigma * p.sigma + p.theta * p.theta / p.alpha) * ct / p.alpha;
    return {mean, std::sqrt(var)};
}

}  // namespace rnd
