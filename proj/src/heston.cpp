#include "rnd/heston.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include "rnd/errors.hpp"

namespace rnd {

using cd = std::complex<double>;

void check_heston(const HestonParams& p, bool require_feller) {
    if (!(p.v0 > 0.0) || !(p.kappa > 0.0) || !(p.theta > 0.0) || !(p.eta > 0.0))
        throw DomainError("Heston parameters: v0, kappa, theta, eta must be positive");
    if (!(std::fabs(p.rho) < 1.0)) throw DomainError("Heston parameters: need |rho| < 1");
    if (require_feller && !feller(p))
        throw DomainError("Heston parameters violate the Feller condition 2 kappa theta > eta^2");
}

bool feller(const HestonParams& p) { return 2.0 * p.kappa * p.theta > p.eta * p.eta; }

namespace {

struct Pieces {
    cd beta, d, g;
};

Pieces pieces(const HestonParams& p, cd xi) {
    const cd i(0.0, 1.0);
    const cd ahat = -0.5 * xi * (xi + i);
    const cd beta = p.kappa - i * p.eta * p.rho * xi;
    const double gam = 0.5 * p.eta * p.eta;
    const cd d = std::sqrt(beta * beta - 4.0 * gam * ahat);
    return {beta, d, (beta - d) / (beta + d)};
}

}  // namespace

cd heston_cf(const HestonParams& p, double t, cd xi) {
    const auto [beta, d, g] = pieces(p, xi);
    const double e2 = p.eta * p.eta;
    const cd edt = std::exp(-d * t);
    const cd a = (p.kappa * p.theta / e2) * ((beta - d) * t - 2.0 * std::log((g * edt - 1.0) / (g - 1.0)));
    const cd b = ((beta - d) / e2) * (1.0 - edt) / (1.0 - g * edt);
    return std::exp(a + b * p.v0);
}

cd heston_cf_textbook(const HestonParams& p, double t, cd xi) {
    const auto [beta, d, g] = pieces(p, xi);
    const double e2 = p.eta * p.eta;
    const cd a = (p.kappa * p.theta / e2) *
                 ((beta + d) * t - 2.0 * std::log((std::exp(d * t) - g) / (1.0 - g)));
    const cd edt = std::exp(-d * t);
    const cd b = ((beta - d) / e2) * (1.0 - edt) / (1.0 - g * edt);
    return std::exp(a + b * p.v0);
}

double heston_mean(const HestonParams& p, double t) {
    const double iv = p.theta * t + (p.v0 - p.theta) * (-std::expm1(-p.kappa * t)) / p.kappa;
    return -0.5 * iv;
}

double heston_proxy_std(const HestonParams& p, double t) { return std::sqrt(-2.0 * heston_mean(p, t)); }

namespace {
std::mutex planner_mutex;
}

DensityGrid heston_density_fft(const HestonParams& p, double t, const FftGridSpec& spec) {
    check_heston(p);
    if (!(t > 0.0)) throw DomainError("Heston density: t must be positive");
    const int n = spec.n;
    if (n < 16 || (n & (n - 1)) != 0) throw DomainError("FFT grid size must be a power of two");
    const double mean = heston_mean(p, t);
    const double len = 2.0 * spec.width_sd * heston_proxy_std(p, t);
    const double dx = len / n;
    const double dxi = 2.0 * std::numbers::pi / len;

    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lk(planner_mutex);
        plan = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    // centred indices: input slot (m + n/2) mod n holds xi_m = (m - n/2) dxi shifted
    const int h = n / 2;
    for (int m = 0; m < n; ++m) {
        const double xi = (m - h) * dxi;
        const cd v = heston_cf(p, t, xi) * std::exp(cd(0.0, -xi * mean));
        const int slot = (m + h) % n;
        buf[slot][0] = v.real();
        buf[slot][1] = v.imag();
    }
    fftw_execute(plan);
    DensityGrid g;
    g.x0 = mean - h * dx;
    g.dx = dx;
    g.f.resize(n);
    double resid = 0.0;
    const double scale = dxi / (2.0 * std::numbers::pi);
    for (int j = 0; j < n; ++j) {
        const int slot = (j + h) % n;
        g.f[j] = buf[slot][0] * scale;
        resid = std::max(resid, std::fabs(buf[slot][1] * scale));
    }
    {
        std::lock_guard<std::mutex> lk(planner_mutex);
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
    if (resid > 1e-8) throw DomainError("Heston FFT density: imaginary residue too large");
    const double mass = trapezoid(g.f, g.dx);
    if (std::fabs(mass - 1.0) > 1e-3) throw DomainError("Heston FFT density: grid too narrow");
    return g;
}

}  // namespace rnd
