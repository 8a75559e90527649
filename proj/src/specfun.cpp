#include "rnd/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rnd/errors.hpp"

namespace rnd {

namespace {

void check_order(int n) {
    if (n < 0 || n > kMaxHermiteOrder)
        throw DomainError("hermite order out of range: " + std::to_string(n));
}

}  // namespace

double hermite_poly(int n, double x) {
    check_order(n);
    if (n == 0) return 1.0;
    double hm = 1.0, h = x;
    for (int k = 1; k < n; ++k) {
        const double hp = x * h - k * hm;
        hm = h;
        h = hp;
    }
    return h;
}

double hermite_fn(int n, double x) {
    return hermite_poly(n, std::numbers::sqrt2 * x) * std::exp(-0.5 * x * x);
}

void hermite_fn_all(int n, double x, double* out) {
    check_order(n);
    const double y = std::numbers::sqrt2 * x;
    const double g = std::exp(-0.5 * x * x);
    out[0] = g;
    if (n == 0) return;
    out[1] = y * g;
    for (int k = 1; k < n; ++k) out[k + 1] = y * out[k] - k * out[k - 1];
}

std::vector<double> hermite_fn_all(int n, double x) {
    std::vector<double> out(n + 1);
    hermite_fn_all(n, x, out.data());
    return out;
}

double hermite_log_norm_sq(int n) {
    check_order(n);
    return std::lgamma(n + 1.0) + 0.5 * std::log(std::numbers::pi);
}

double hermite_norm_sq(int n) {
    const double l = hermite_log_norm_sq(n);
    if (l > std::log(std::numeric_limits<double>::max()))
        throw DomainError("hermite norm overflows");
    return std::exp(l);
}

double gauss_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double gauss_pdf(double x) {
    return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k: x must be positive");
    return boost::math::cyl_bessel_k(std::fabs(nu), x);
}

double reg_lower_gamma(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw DomainError("reg_lower_gamma: need a > 0, x >= 0");
    if (std::isinf(x)) return 1.0;
    return boost::math::gamma_p(a, x);
}

}  // namespace rnd
