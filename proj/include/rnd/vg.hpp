#pragma once

namespace rnd {

// Variance-gamma: Y_t = theta G_t + sigma W(G_t), G_t ~ Gamma(c t, alpha) with c = alpha.
struct VgParams {
    double theta = 0.1;
    double sigma = 0.3;
    double alpha = 2.0;
    double c() const { return alpha; }
};

// Throws DomainError unless sigma > 0, alpha > 0 and theta + sigma^2/2 < alpha.
void check_vg(const VgParams& p);

// ct > 1/4: the density of Y_t is square integrable.
bool vg_l2_admissible(const VgParams& p, double t);
void require_vg_l2(const VgParams& p, double t);

// eta such that exp(Y_t + eta t) has unit mean.
double vg_drift(const VgParams& p);

// Density of Y_t. Bessel form; at x = 0 the limit value (+inf when ct <= 1/2).
double vg_density(const VgParams& p, double t, double x);

// Same density from the gamma mixture of Gaussians, by adaptive quadrature in the
// subordinator variable.
double vg_mixture_density(const VgParams& p, double t, double x);

// Density of X_t = Y_t + eta t, the log of the discounted, forward-normalized price.
double vg_log_return_density(const VgParams& p, double t, double x);

struct VgMoments {
    double mean;
    double std;
};
// Closed-form mean and standard deviation of X_t.
VgMoments vg_log_return_moments(const VgParams& p, double t);

namespace detail {
// General shape rate c, kept so the c = alpha restriction is a single assignment.
double vg_density_general(double theta, double sigma, double alpha, double c, double t, double x);
double vg_drift_general(double theta, double sigma, double alpha, double c);
}  // namespace detail

}  // namespace rnd
