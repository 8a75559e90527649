#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "rnd/grid.hpp"

namespace rnd {

// free: a and b independent. p: b = -a^2/2. m: p plus unit mass and unit
// exponential moment.
enum class Flavor { free, p, m };

std::string flavor_name(Flavor f);
Flavor parse_flavor(const std::string& s);

// Log-return density f_n(x) = (1/a) sum_k coeffs[k] h_k((x - b)/a).
// coeffs[k] = <f(a . + b), h_k> a / ||h_k||^2, i.e. the expansion of the density
// of (X - b)/a; the 1/a Jacobian lives in the evaluation, not in the coefficients.
struct HermiteModel {
    Flavor flavor = Flavor::p;
    double a = 1.0;
    double b = -0.5;
    std::vector<double> coeffs;
    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

double eval_model(const HermiteModel& m, double x);
std::vector<double> eval_model(const HermiteModel& m, const std::vector<double>& xs);
// OpenMP variant of the above, same values.
std::vector<double> eval_model_parallel(const HermiteModel& m, const std::vector<double>& xs);

std::vector<double> hermite_norms(int n);

// Working-space rows: sum_k beta_k u_k = 1 (unit mass) and sum_k beta_k w_k = 1
// (unit mean of exp X).
enum class ConstraintKind { unit_integral, approx_martingale };

struct ConstraintSystem {
    Eigen::MatrixXd L;
    Eigen::VectorXd v;
};

std::vector<double> constraint_row(double a, double b, int n, ConstraintKind kind);
// Derivative of the approx_martingale row in a (b held fixed); the b-derivative is the row itself.
std::vector<double> martingale_row_da(double a, double b, int n);
ConstraintSystem martingale_constraints(double a, double b, int n);

// argmin sum_k (alpha_k - beta_k)^2 norms_k subject to L beta = v.
std::vector<double> constrained_project(const std::vector<double>& alpha, const ConstraintSystem& c,
                                        const std::vector<double>& norms);

// ||f - f~||^2 where f~ has coefficients beta and f has exact coefficients alpha.
double l2_error_sq(double f_norm_sq, double a, const std::vector<double>& alpha,
                   const std::vector<double>& beta);

// Coefficients by adaptive quadrature of a callable density. Points where f is not
// smooth go in `kinks`.
std::vector<double> coeffs_from_density(const std::function<double(double)>& f, double a, double b,
                                        int n, const std::vector<double>& kinks = {});

// Trapezoid on a grid. If est_err is given it receives the change against the
// half-resolution sum.
std::vector<double> coeffs_from_grid(const DensityGrid& g, double a, double b, int n,
                                     double* est_err = nullptr);

enum class ScaleMode { p, moment };
struct ScaleLocation {
    double a;
    double b;
};
ScaleLocation default_scale_location(double mean, double std, ScaleMode mode);

// Builds a model of the given flavor from exact coefficients (projects for m).
HermiteModel make_model(Flavor flavor, double a, double b, const std::vector<double>& alpha);

std::string model_to_json(const HermiteModel& m);
HermiteModel model_from_json(const std::string& text);

}  // namespace rnd
