#pragma once

#include <functional>
#include <vector>

namespace rnd {

struct NmOptions {
    double xtol = 1e-6;   // simplex diameter (max-norm from the best vertex)
    double ftol = 1e-9;   // spread of objective values
    int max_iter = 500;
    double rel_step = 0.05;   // initial simplex: x_i (1 + rel_step)
    double zero_step = 0.00025;  // used when x_i = 0
};

struct NmResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

// Nelder-Mead with reflection 1, expansion 2, contraction 1/2, shrink 1/2.
// Deterministic; non-finite objective values are treated as +inf.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, const NmOptions& opt = {});

}  // namespace rnd
