#pragma once

#include <string>
#include <vector>

#include "rnd/block.hpp"
#include "rnd/heston.hpp"
#include "rnd/hermite.hpp"
#include "rnd/nelder_mead.hpp"
#include "rnd/vg.hpp"

namespace rnd {

// |model_j / observed_j - 1|
std::vector<double> rel_errors(const std::vector<double>& model, const std::vector<double>& observed);
double l1_norm(const std::vector<double>& v);

struct CalibrationResult {
    std::vector<std::string> names;
    std::vector<double> params;
    double objective = 0.0;        // l1 norm of relative errors on the calibration set
    double start_objective = 0.0;
    int iterations = 0;
    bool converged = false;
    bool overfit = false;          // fewer quotes than parameters
    bool admissible = true;        // VG: penalty cleared; Heston: Feller holds (warning only)
    double k_min = 0.0;
    double k_max = 0.0;
};

struct AlphaFit {
    std::vector<double> alpha;
    bool rank_deficient = false;
};

// Least squares for the coefficients at fixed (a, b): minimizes ||D alpha - 1||_2 with
// D_jk = (price of h_k at strike j) / observed_j. For flavor m the two martingale
// rows are imposed as equality constraints.
AlphaFit fit_hermite_alpha(const OptionBlock& block, double a, double b, int n, Flavor flavor = Flavor::p);

struct FitOptions {
    NmOptions nm;
    int restarts = 3;  // fresh simplex around the last best point while it keeps improving
    FitOptions() { nm.max_iter = 2000; }
};

// Outer simplex on the l1 objective over a (p, m) or (a, b) (free); inner least squares.
// The start is the Black-Scholes fit: a = sigma sqrt(t), b = -a^2/2.
struct HermiteFit {
    HermiteModel model;
    CalibrationResult result;
};
HermiteFit fit_hermite(const OptionBlock& block, int n, Flavor flavor, const FitOptions& opt = {});

struct BsFit {
    double sigma;
    CalibrationResult result;
};
BsFit fit_bs(const OptionBlock& block);

struct VgFit {
    VgParams params;
    CalibrationResult result;
};
VgFit fit_vg(const OptionBlock& block, const FitOptions& opt = {});

struct HestonFit {
    HestonParams params;
    CalibrationResult result;
};
HestonFit fit_heston(const OptionBlock& block, const FitOptions& opt = {});

// Estimator names: bs, vg, heston, hermite:<flavor>:<n> (flavor free, p or m).
struct Estimator {
    enum class Kind { bs, vg, heston, hermite } kind = Kind::bs;
    Flavor flavor = Flavor::p;
    int n = 0;
    std::string name() const;
    int parameter_count() const;
};
Estimator parse_estimator(const std::string& s);

// A calibrated estimator that can price any strike of the block's maturity.
struct FittedEstimator {
    Estimator est;
    double sigma = 0.0;
    VgParams vg;
    HestonParams heston;
    HermiteModel hermite;
    CalibrationResult result;
    std::vector<double> price(const OptionBlock& block, const std::vector<double>& strikes) const;
};
FittedEstimator calibrate(const Estimator& est, const OptionBlock& block, const FitOptions& opt = {});

}  // namespace rnd
