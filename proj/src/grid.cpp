#include "rnd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "rnd/errors.hpp"

namespace rnd {

std::vector<double> DensityGrid::abscissae() const {
    std::vector<double> xs(f.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = x(i);
    return xs;
}

DensityGrid sample_density(const std::function<double(double)>& f, double lo, double hi,
                           std::size_t n) {
    if (n < 2 || !(hi > lo)) throw DomainError("sample_density: bad grid");
    DensityGrid g;
    g.x0 = lo;
    g.dx = (hi - lo) / static_cast<double>(n - 1);
    g.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.f[i] = f(g.x(i));
    return g;
}

double trapezoid(const std::vector<double>& v, double dx) {
    if (v.size() < 2) return 0.0;
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * dx;
}

GridMoments grid_moments(const DensityGrid& g) {
    const std::size_t n = g.size();
    std::vector<double> tmp(n);
    GridMoments m{};
    m.mass = trapezoid(g.f, g.dx);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = g.x(i) * g.f[i];
    m.mean = trapezoid(tmp, g.dx) / m.mass;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = g.x(i) - m.mean;
        tmp[i] = d * d * g.f[i];
    }
    m.std = std::sqrt(trapezoid(tmp, g.dx) / m.mass);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = std::fabs(g.f[i]);
    m.l1 = trapezoid(tmp, g.dx);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = g.f[i] * g.f[i];
    m.l2 = std::sqrt(trapezoid(tmp, g.dx));
    m.linf = 0.0;
    for (double v : g.f) m.linf = std::max(m.linf, std::fabs(v));
    return m;
}

RelativeErrors relative_errors(const DensityGrid& g, const std::vector<double>& approx) {
    if (approx.size() != g.size()) throw DomainError("relative_errors: size mismatch");
    DensityGrid d = g;
    for (std::size_t i = 0; i < d.size(); ++i) d.f[i] = g.f[i] - approx[i];
    const GridMoments mf = grid_moments(g);
    const GridMoments md = grid_moments(d);
    return {100.0 * md.l2 / mf.l2, 100.0 * md.l1 / mf.l1, 100.0 * md.linf / mf.linf};
}

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void write_columns(std::ostream& os, const DensityGrid& g, const std::vector<std::string>& names,
                   const std::vector<std::vector<double>>& columns) {
    os << "x";
    for (const auto& n : names) os << '\t' << n;
    os << '\n';
    for (std::size_t i = 0; i < g.size(); ++i) {
        os << fmt_g(g.x(i));
        for (const auto& c : columns) os << '\t' << fmt_g(c[i]);
        os << '\n';
    }
}

void write_grid(std::ostream& os, const DensityGrid& g) { write_columns(os, g, {"f"}, {g.f}); }

DensityGrid read_grid(std::istream& is) {
    std::string line;
    std::vector<double> xs, fs;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        double x, f;
        if (!(ls >> x >> f)) {
            if (lineno == 1) continue;  // header
            throw SchemaError("grid file line " + std::to_string(lineno) + ": expected x<TAB>f");
        }
        xs.push_back(x);
        fs.push_back(f);
    }
    if (xs.size() < 2) throw SchemaError("grid file: fewer than two rows");
    DensityGrid g;
    g.x0 = xs.front();
    g.dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (std::fabs(xs[i] - xs[0] - g.dx * static_cast<double>(i)) > 1e-6 * std::fabs(g.dx) + 1e-9)
            throw SchemaError("grid file: abscissae not uniformly spaced");
    g.f = std::move(fs);
    return g;
}

}  // namespace rnd
