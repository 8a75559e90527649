#include "rnd/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "rnd/errors.hpp"
#include "rnd/quadrature.hpp"
#include "rnd/specfun.hpp"

namespace rnd {

using cd = std::complex<double>;

void check_put(const PutSpec& s) {
    if (!(s.s0 > 0.0) || !(s.k > 0.0) || !(s.t > 0.0))
        throw DomainError("put spec: s0, k and t must be positive");
    if (!std::isfinite(s.r) || !std::isfinite(s.q)) throw DomainError("put spec: r and q must be finite");
}

double reduced_strike(const PutSpec& s) { return s.k * std::exp(-(s.r - s.q) * s.t) / s.s0; }

double bs_put(const PutSpec& s, double sigma) {
    if (!(sigma >= 0.0)) throw DomainError("bs_put: negative volatility");
    check_put(s);
    const double dk = s.k * std::exp(-s.r * s.t);
    const double ds = s.s0 * std::exp(-s.q * s.t);
    const double v = sigma * std::sqrt(s.t);
    if (v == 0.0) return std::max(dk - ds, 0.0);
    const double d1 = (std::log(ds / dk) + 0.5 * v * v) / v;
    return dk * gauss_cdf(-(d1 - v)) - ds * gauss_cdf(-d1);
}

double bs_call(const PutSpec& s, double sigma) {
    return bs_put(s, sigma) + s.s0 * std::exp(-s.q * s.t) - s.k * std::exp(-s.r * s.t);
}

PartialIntegrals hermite_partial_integrals(int n, double z, double a, double b) {
    if (!(a > 0.0)) throw DomainError("partial integrals need a > 0");
    PartialIntegrals out;
    out.i.resize(n + 1);
    out.j.resize(n + 1);
    const double s2p = std::sqrt(2.0 * std::numbers::pi);
    const double sq2 = std::numbers::sqrt2;
    if (std::isinf(z) && z < 0) {
        std::fill(out.i.begin(), out.i.end(), 0.0);
        std::fill(out.j.begin(), out.j.end(), 0.0);
        return out;
    }
    const bool top = std::isinf(z);
    // H_{k}(sqrt2 z) for the boundary terms; exponentials kept separate
    std::vector<double> H(n + 1);
    if (!top) {
        H[0] = 1.0;
        if (n >= 1) H[1] = sq2 * z;
        for (int k = 1; k < n; ++k) H[k + 1] = sq2 * z * H[k] - k * H[k - 1];
    }
    const double eg = top ? 0.0 : std::exp(-0.5 * z * z);
    const double eag = top ? 0.0 : std::exp(a * z + b - 0.5 * z * z);
    out.i[0] = s2p * (top ? 1.0 : gauss_cdf(z));
    out.j[0] = s2p * std::exp(b + 0.5 * a * a) * (top ? 1.0 : gauss_cdf(z - a));
    for (int k = 1; k <= n; ++k) {
        const double im2 = k >= 2 ? out.i[k - 2] : 0.0;
        const double jm2 = k >= 2 ? out.j[k - 2] : 0.0;
        out.i[k] = (k - 1) * im2 - sq2 * (top ? 0.0 : H[k - 1] * eg);
        out.j[k] = (k - 1) * jm2 + sq2 * a * out.j[k - 1] - sq2 * (top ? 0.0 : H[k - 1] * eag);
    }
    return out;
}

std::vector<double> hermite_basis_puts(int n, double a, double b, const PutSpec& s) {
    check_put(s);
    const double kp = reduced_strike(s);
    const double z = (std::log(kp) - b) / a;
    const auto pi = hermite_partial_integrals(n, z, a, b);
    const double scale = s.s0 * std::exp(-s.q * s.t);
    std::vector<double> out(n + 1);
    for (int k = 0; k <= n; ++k) out[k] = scale * (kp * pi.i[k] - pi.j[k]);
    return out;
}

double hermite_put(const HermiteModel& m, const PutSpec& s) {
    const auto d = hermite_basis_puts(m.order(), m.a, m.b, s);
    double p = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) p += m.coeffs[k] * d[k];
    return p;
}

std::vector<double> hermite_put_ladder(const HermiteModel& m, const PutSpec& s,
                                       const std::vector<double>& strikes, Exec exec) {
    std::vector<double> out(strikes.size());
    const long n = static_cast<long>(strikes.size());
    auto one = [&](long i) {
        PutSpec si = s;
        si.k = strikes[i];
        out[i] = hermite_put(m, si);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) one(i);
    } else {
        for (long i = 0; i < n; ++i) one(i);
    }
    return out;
}

namespace {

// E (k' - e^X)^+ given the subordinator value s, as a zero-rate, unit-maturity
// Black-Scholes put with dividend yield -(eta t + (theta + sigma^2/2) s).
double vg_conditional_put(const VgParams& p, double eta_t, double kp, double s) {
    PutSpec c;
    c.s0 = 1.0;
    c.k = kp;
    c.r = 0.0;
    c.q = -(eta_t + (p.theta + 0.5 * p.sigma * p.sigma) * s);
    c.t = 1.0;
    return bs_put(c, p.sigma * std::sqrt(s));
}

std::vector<double> vg_ladder_rule(const VgParams& p, const PutSpec& s, const std::vector<double>& strikes,
                                   double step, Exec exec) {
    const double ct = p.c() * s.t;
    const double eta_t = vg_drift(p) * s.t;
    const QuadRule rule = exp_sinh_rule(ct / p.alpha, step);
    const double lnorm = ct * std::log(p.alpha) - std::lgamma(ct);
    std::vector<double> wd(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double x = rule.x[i];
        wd[i] = rule.w[i] * std::exp(lnorm + (ct - 1.0) * std::log(x) - p.alpha * x);
    }
    const double scale = s.s0 * std::exp(-s.q * s.t);
    std::vector<double> out(strikes.size());
    const long n = static_cast<long>(strikes.size());
    auto one = [&](long j) {
        PutSpec sj = s;
        sj.k = strikes[j];
        check_put(sj);
        const double kp = reduced_strike(sj);
        const double h0 = std::max(kp - std::exp(eta_t), 0.0);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            if (wd[i] == 0.0) continue;
            acc += wd[i] * (vg_conditional_put(p, eta_t, kp, rule.x[i]) - h0);
        }
        out[j] = scale * (h0 + acc);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long j = 0; j < n; ++j) one(j);
    } else {
        for (long j = 0; j < n; ++j) one(j);
    }
    return out;
}

constexpr double kVgStep = 1.0 / 16.0;

}  // namespace

std::vector<double> vg_put_ladder(const VgParams& p, const PutSpec& s, const std::vector<double>& strikes,
                                  Exec exec) {
    check_vg(p);
    return vg_ladder_rule(p, s, strikes, kVgStep, exec);
}

double vg_put(const VgParams& p, const PutSpec& s, VgPutInfo* info) {
    check_vg(p);
    check_put(s);
    const double coarse = vg_ladder_rule(p, s, {s.k}, kVgStep, Exec::serial)[0];
    const double fine = vg_ladder_rule(p, s, {s.k}, 0.5 * kVgStep, Exec::serial)[0];
    if (info) {
        info->change = std::fabs(fine - coarse) / std::max(std::fabs(fine), 1e-300);
        info->accurate = info->change <= 1e-7;
    }
    return fine;
}

double heston_cutoff(const HestonParams& p, double t, double damping) {
    const double xs[3] = {10.0, 20.0, 40.0};
    double l[3];
    for (int i = 0; i < 3; ++i) l[i] = std::log(std::max(std::abs(heston_cf(p, t, xs[i])), 1e-300));
    const double mx = (xs[0] + xs[1] + xs[2]) / 3.0, ml = (l[0] + l[1] + l[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < 3; ++i) {
        sxy += (xs[i] - mx) * (l[i] - ml);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double c = -sxy / sxx;
    const double a0 = ml + c * mx;
    const double m = std::log(std::max(heston_cf(p, t, cd(0.0, -(damping + 1.0))).real(), 1e-300));
    const double target = std::log(1e-14);
    constexpr double umax = 1e4;
    auto bound = [&](double u) { return m + a0 - c * u - 2.0 * std::log(u); };
    if (bound(40.0) <= target) return 40.0;
    if (!(c > 0.0) || bound(umax) > target) return umax;
    double lo = 40.0, hi = umax;
    for (int it = 0; it < 100 && hi - lo > 1e-3 * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        (bound(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

namespace {

cd cm_kernel(const HestonParams& p, double t, double u, double damping) {
    const cd num = heston_cf(p, t, cd(u, -(damping + 1.0)));
    return num / (cd(damping, u) * cd(damping + 1.0, u));
}

void check_damping(double damping) {
    if (!(damping < -1.0)) throw DomainError("Carr-Madan damping must be below -1 for puts");
}

}  // namespace

double heston_put(const HestonParams& p, const PutSpec& s, double damping) {
    check_heston(p);
    check_put(s);
    check_damping(damping);
    const double k = std::log(reduced_strike(s));
    const double ucut = heston_cutoff(p, s.t, damping);
    auto f = [&](double u) { return (std::exp(cd(0.0, -u * k)) * cm_kernel(p, s.t, u, damping)).real(); };
    std::vector<double> cuts;
    const int pieces = std::max(1, static_cast<int>(std::ceil(ucut / 20.0)));
    for (int i = 0; i <= pieces; ++i) cuts.push_back(ucut * i / pieces);
    const double integral = integrate_pieces(f, cuts, 1e-13);
    return s.s0 * std::exp(-s.q * s.t) * std::exp(-damping * k) * integral / std::numbers::pi;
}

std::vector<double> heston_put_ladder(const HestonParams& p, const PutSpec& s,
                                      const std::vector<double>& strikes, double damping, Exec exec) {
    check_heston(p);
    check_damping(damping);
    std::vector<double> ks(strikes.size());
    double kmax = 1.0;
    for (std::size_t j = 0; j < strikes.size(); ++j) {
        PutSpec sj = s;
        sj.k = strikes[j];
        check_put(sj);
        ks[j] = std::log(reduced_strike(sj));
        kmax = std::max(kmax, std::fabs(ks[j]));
    }
    const double ucut = heston_cutoff(p, s.t, damping);
    const double width = std::min(2.0, 2.0 / kmax);
    const QuadRule rule = composite_gauss_legendre(0.0, ucut, static_cast<int>(std::ceil(ucut / width)));
    std::vector<cd> ker(rule.size());
    const long nn = static_cast<long>(rule.size());
    const long nk = static_cast<long>(ks.size());
    std::vector<double> out(strikes.size());
    const double scale = s.s0 * std::exp(-s.q * s.t) / std::numbers::pi;
    auto node = [&](long i) { ker[i] = rule.w[i] * cm_kernel(p, s.t, rule.x[i], damping); };
    auto strike = [&](long j) {
        double acc = 0.0;
        for (long i = 0; i < nn; ++i) acc += (std::exp(cd(0.0, -rule.x[i] * ks[j])) * ker[i]).real();
        out[j] = scale * std::exp(-damping * ks[j]) * acc;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < nn; ++i) node(i);
#pragma omp parallel for schedule(static)
        for (long j = 0; j < nk; ++j) strike(j);
    } else {
        for (long i = 0; i < nn; ++i) node(i);
        for (long j = 0; j < nk; ++j) strike(j);
    }
    return out;
}

double corrected_price(double model_k, double model_k0, double observed_k0, double k, double k0) {
    if (!(k0 > 0.0)) throw DomainError("corrected_price: anchor strike must be positive");
    if (k == k0) return observed_k0;
    return model_k + (k / k0) * (observed_k0 - model_k0);
}

}  // namespace rnd
