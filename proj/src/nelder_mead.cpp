#include "rnd/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rnd {

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& fun,
                     const std::vector<double>& x0, const NmOptions& opt) {
    const std::size_t d = x0.size();
    NmResult res;
    auto f = [&](const std::vector<double>& x) {
        ++res.evaluations;
        const double v = fun(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };
    std::vector<std::vector<double>> s(d + 1, x0);
    std::vector<double> fv(d + 1);
    for (std::size_t i = 0; i < d; ++i)
        s[i + 1][i] = x0[i] != 0.0 ? x0[i] * (1.0 + opt.rel_step) : opt.zero_step;
    for (std::size_t i = 0; i <= d; ++i) fv[i] = f(s[i]);

    std::vector<std::size_t> idx(d + 1);
    auto order = [&] {
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2(d + 1);
        std::vector<double> f2(d + 1);
        for (std::size_t i = 0; i <= d; ++i) {
            s2[i] = s[idx[i]];
            f2[i] = fv[idx[i]];
        }
        s.swap(s2);
        fv.swap(f2);
    };
    auto point = [&](const std::vector<double>& c, double t) {
        std::vector<double> x(d);
        for (std::size_t j = 0; j < d; ++j) x[j] = c[j] + t * (s[d][j] - c[j]);
        return x;
    };

    order();
    while (res.iterations < opt.max_iter) {
        double diam = 0.0;
        for (std::size_t i = 1; i <= d; ++i)
            for (std::size_t j = 0; j < d; ++j) diam = std::max(diam, std::fabs(s[i][j] - s[0][j]));
        const double spread = fv[d] - fv[0];
        if (diam < opt.xtol && spread < opt.ftol) {
            res.converged = true;
            break;
        }
        ++res.iterations;
        std::vector<double> c(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) c[j] += s[i][j] / static_cast<double>(d);

        const auto xr = point(c, -1.0);
        const double fr = f(xr);
        if (fr < fv[0]) {
            const auto xe = point(c, -2.0);
            const double fe = f(xe);
            if (fe < fr) {
                s[d] = xe;
                fv[d] = fe;
            } else {
                s[d] = xr;
                fv[d] = fr;
            }
        } else if (fr < fv[d - 1]) {
            s[d] = xr;
            fv[d] = fr;
        } else {
            bool shrink = false;
            if (fr < fv[d]) {
                const auto xc = point(c, -0.5);
                const double fc = f(xc);
                if (fc <= fr) {
                    s[d] = xc;
                    fv[d] = fc;
                } else {
                    shrink = true;
                }
            } else {
                const auto xcc = point(c, 0.5);
                const double fcc = f(xcc);
                if (fcc < fv[d]) {
                    s[d] = xcc;
                    fv[d] = fcc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (std::size_t i = 1; i <= d; ++i) {
                    for (std::size_t j = 0; j < d; ++j) s[i][j] = s[0][j] + 0.5 * (s[i][j] - s[0][j]);
                    fv[i] = f(s[i]);
                }
            }
        }
        order();
    }
    res.x = s[0];
    res.f = fv[0];
    return res;
}

}  // namespace rnd
