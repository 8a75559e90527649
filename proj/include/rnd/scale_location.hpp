#pragma once

#include <functional>
#include <vector>

#include "rnd/grid.hpp"
#include "rnd/heston.hpp"
#include "rnd/hermite.hpp"
#include "rnd/vg.hpp"

namespace rnd {

// Exact Hermite coefficients of a target density at any (a, b, order), plus its
// squared L2 norm.
struct CoeffSource {
    std::function<std::vector<double>(double a, double b, int n)> coeffs;
    double norm_sq = 0.0;
};

CoeffSource vg_source(const VgParams& p, double t);
CoeffSource heston_source(const HestonParams& p, double t);
CoeffSource grid_source(const DensityGrid& g);
CoeffSource callable_source(const std::function<double(double)>& f, double lo, double hi,
                            const std::vector<double>& kinks = {});

// J(a, b) = ||f - f_n||^2 for the given flavor (projection applied for m).
double objective_j(const CoeffSource& src, int n, Flavor flavor, double a, double b);

struct JGradient {
    double j;
    double da;  // partial in a, b held fixed
    double db;  // partial in b
};
JGradient objective_j_gradient(const CoeffSource& src, int n, Flavor flavor, double a, double b);

enum class OuterMethod { nelder_mead, gradient };

struct ScaleOptOptions {
    OuterMethod method = OuterMethod::nelder_mead;
    int max_iter = 500;
    double xtol = 1e-6;
    double ftol = 1e-9;
    bool check_hessian = false;
};

struct ScaleOptResult {
    HermiteModel model;
    double j = 0.0;
    double j_init = 0.0;
    int iterations = 0;
    bool converged = false;
    bool hessian_checked = false;
    bool hessian_pd = false;
};

// Local minimizer of J. For p and m the search is over a with b = -a^2/2; for free
// over (a, b). Coefficients are recomputed at the returned point.
ScaleOptResult optimize_scale_location(const CoeffSource& src, int n, Flavor flavor,
                                       ScaleLocation init, const ScaleOptOptions& opt = {});

// Model at fixed (a, b).
HermiteModel model_at(const CoeffSource& src, int n, Flavor flavor, double a, double b);

}  // namespace rnd
