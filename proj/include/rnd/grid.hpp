#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace rnd {

// Uniformly spaced samples of a density in log-return space.
struct DensityGrid {
    double x0 = 0.0;
    double dx = 0.0;
    std::vector<double> f;

    std::size_t size() const { return f.size(); }
    double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    std::vector<double> abscissae() const;
};

DensityGrid sample_density(const std::function<double(double)>& f, double lo, double hi,
                           std::size_t n);

struct GridMoments {
    double mass;
    double mean;
    double std;
    double l1;
    double l2;
    double linf;
};

// Trapezoidal moments and norms.
GridMoments grid_moments(const DensityGrid& g);

double trapezoid(const std::vector<double>& v, double dx);

// L2, L1 and Linf distances of `approx` from `g`, in percent of the norms of g.
struct RelativeErrors {
    double l2;
    double l1;
    double linf;
};
RelativeErrors relative_errors(const DensityGrid& g, const std::vector<double>& approx);

// Tab-separated text with a header line naming the columns: "x", then `names`.
void write_columns(std::ostream& os, const DensityGrid& g, const std::vector<std::string>& names,
                   const std::vector<std::vector<double>>& columns);
void write_grid(std::ostream& os, const DensityGrid& g);
DensityGrid read_grid(std::istream& is);

}  // namespace rnd
