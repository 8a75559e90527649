#pragma once

#include <vector>

#include "rnd/heston.hpp"
#include "rnd/hermite.hpp"
#include "rnd/vg.hpp"

namespace rnd {

// Serial loops are the reference; parallel ones give bitwise-equal results.
enum class Exec { serial, parallel };

struct PutSpec {
    double s0 = 1.0;
    double k = 1.0;
    double r = 0.0;
    double q = 0.0;
    double t = 1.0;
};

void check_put(const PutSpec& s);

// Strike in units of the forward-discounted spot: k e^{-(r-q)t} / s0.
double reduced_strike(const PutSpec& s);

double bs_put(const PutSpec& s, double sigma);
double bs_call(const PutSpec& s, double sigma);

// I_k(z) = int_{-inf}^z h_k and J_k(z) = int_{-inf}^z e^{a x + b} h_k, k = 0..n.
struct PartialIntegrals {
    std::vector<double> i;
    std::vector<double> j;
};
PartialIntegrals hermite_partial_integrals(int n, double z, double a, double b);

// Put price of each basis function h_k: s0 e^{-qt} (k' I_k - J_k) at zeta = (log k' - b)/a.
std::vector<double> hermite_basis_puts(int n, double a, double b, const PutSpec& s);

// Closed-form put under a Hermite density; not clamped, may be negative.
double hermite_put(const HermiteModel& m, const PutSpec& s);
std::vector<double> hermite_put_ladder(const HermiteModel& m, const PutSpec& s,
                                       const std::vector<double>& strikes, Exec exec = Exec::serial);

struct VgPutInfo {
    double change = 0.0;    // relative change under step halving
    bool accurate = true;   // change <= 1e-7
};

// Gamma mixture of Black-Scholes prices, double-exponential rule in the subordinator.
double vg_put(const VgParams& p, const PutSpec& s, VgPutInfo* info = nullptr);
// One rule shared by every strike; s.k is ignored.
std::vector<double> vg_put_ladder(const VgParams& p, const PutSpec& s, const std::vector<double>& strikes,
                                  Exec exec = Exec::serial);

constexpr double kDefaultDamping = -1.75;

// Damped Fourier inversion of the put price; damping must be < -1.
double heston_put(const HestonParams& p, const PutSpec& s, double damping = kDefaultDamping);
// Fixed composite Gauss-Legendre rule shared by all strikes.
std::vector<double> heston_put_ladder(const HestonParams& p, const PutSpec& s,
                                      const std::vector<double>& strikes,
                                      double damping = kDefaultDamping, Exec exec = Exec::serial);
// Truncation point of the Fourier integral from the exponential envelope of |psi|.
double heston_cutoff(const HestonParams& p, double t, double damping);

// Price anchored to an observed quote at k0.
double corrected_price(double model_k, double model_k0, double observed_k0, double k, double k0);


}  // namespace rnd
