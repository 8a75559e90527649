#pragma once

#include <vector>

#include "rnd/heston.hpp"
#include "rnd/vg.hpp"

namespace rnd {

struct GaussianProduct {
    double mu;
    double sigma;
    double c;
};

// phi((x-mu1)/s1) phi((x-mu2)/s2) = phi((x-mu)/s) e^c / sqrt(2 pi)
GaussianProduct gaussian_product(double mu1, double s1, double mu2, double s2);

struct CoeffOptions {
    int nodes = 64;
    bool check = true;  // repeat with twice the nodes and report the change
};

// Hermite coefficients of the VG log-return density, integrating the conditional
// Gaussian inner products against the gamma law of the subordinator.
// Needs c t > 1/4. `change` receives the node-doubling difference when check is on.
std::vector<double> vg_coeffs_gamma_measure(const VgParams& p, double t, double a, double b, int n,
                                            const CoeffOptions& opt = {}, double* change = nullptr);

// Hermite coefficients of the Heston log-price density from the characteristic
// function (real part for even orders, imaginary part for odd ones).
// `tail` receives the integrand bound at the cutoff.
std::vector<double> heston_coeffs_fourier(const HestonParams& p, double t, double a, double b, int n,
                                          double* tail = nullptr);

}  // namespace rnd
