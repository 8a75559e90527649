#pragma once

#include <vector>

namespace rnd {

// Probabilists' Hermite polynomials: H_0 = 1, H_1 = x, H_{n+1} = x H_n - n H_{n-1}.
// So H_2 = x^2 - 1, H_3 = x^3 - 3x. The physicists' family differs by scaling.
constexpr int kMaxHermiteOrder = 64;

double hermite_poly(int n, double x);

// h_n(x) = H_n(sqrt(2) x) exp(-x^2/2); ||h_n||^2 = n! sqrt(pi).
double hermite_fn(int n, double x);

// h_0(x) .. h_n(x) in one pass.
void hermite_fn_all(int n, double x, double* out);
std::vector<double> hermite_fn_all(int n, double x);

double hermite_log_norm_sq(int n);
double hermite_norm_sq(int n);

double gauss_cdf(double x);
double gauss_pdf(double x);

// Modified Bessel function of the second kind, real order, x > 0.
double bessel_k(double nu, double x);

// Regularized lower incomplete gamma P(a, x).
double reg_lower_gamma(double a, double x);

}  // namespace rnd
