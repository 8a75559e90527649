#pragma once

#include <functional>
#include <vector>

namespace rnd {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

// Nodes/weights for E[g(U)], U ~ Gamma(shape, 1); weights sum to one.
// Generalized Gauss-Laguerre through the Jacobi matrix eigenproblem.
QuadRule gamma_expectation_rule(int n, double shape);

// 20-point Gauss-Legendre repeated on `panels` equal panels of [lo, hi].
QuadRule composite_gauss_legendre(double lo, double hi, int panels);

// Trapezoid in tau after x = scale * exp(pi/2 sinh(tau)) on [0, inf).
// Handles algebraic endpoint behaviour at 0 and exponential decay at infinity.
QuadRule exp_sinh_rule(double scale, double step, double tau_lo = -6.0, double tau_hi = 4.5);

// Adaptive Gauss-Kronrod (61 points), finite or infinite limits.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-12, double* err = nullptr);

// Same on consecutive breakpoints, summing the pieces.
double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& cuts,
                        double tol = 1e-12);

}  // namespace rnd
