#pragma once

#include <complex>

#include "rnd/grid.hpp"

namespace rnd {

struct HestonParams {
    double v0 = 0.05;
    double kappa = 1.0;
    double theta = 0.1;
    double eta = 0.25;
    double rho = -0.75;
};

// Positivity and |rho| < 1. With require_feller, also 2 kappa theta > eta^2.
void check_heston(const HestonParams& p, bool require_feller = false);
bool feller(const HestonParams& p);

// E exp(i xi log S_t) with S_0 = 1 and zero carry, using the form of A whose
// logarithm stays on the principal branch. Complex xi is allowed.
std::complex<double> heston_cf(const HestonParams& p, double t, std::complex<double> xi);

// Textbook A (e^{Dt} - G form); used to cross-check the branch-safe form.
std::complex<double> heston_cf_textbook(const HestonParams& p, double t, std::complex<double> xi);

// Mean of log S_t and the deterministic-volatility proxy sqrt(int_0^t E v ds).
double heston_mean(const HestonParams& p, double t);
double heston_proxy_std(const HestonParams& p, double t);

struct FftGridSpec {
    int n = 1 << 14;
    double width_sd = 12.0;
};

// Fourier inversion on a uniform grid centred at the mean.
DensityGrid heston_density_fft(const HestonParams& p, double t, const FftGridSpec& spec = {});

}  // namespace rnd
