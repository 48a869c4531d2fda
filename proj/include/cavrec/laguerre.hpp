#pragma once

// Laguerre polynomials and the scaled Fourier-Laguerre transform pair
// that semi-discretizes the wave equation in time. The transform turns
// u(x,t) into coefficients u_n(x) = int_0^inf e^{-kt} L_n(kt) u(x,t) dt
// and the PDE into a recursive sequence of stationary problems with
// beta_k = (k+1) kappa^2/a^2 and gamma = kappa/a.

#include <functional>
#include <span>
#include <vector>

namespace cavrec {

double laguerre_poly(int n, double x);

struct LaguerreParams {
    double kappa;
    double wave_speed;
    int n_terms;   // coefficients 0..N, n_terms = N+1

    LaguerreParams(double kappa_, double wave_speed_, int n_terms_);

    int max_index() const { return n_terms - 1; }
    double beta(int k) const { return (k + 1) * kappa * kappa / (wave_speed * wave_speed); }
    double gamma() const { return kappa / wave_speed; }
};

// Gauss-Laguerre rule for the weight e^{-x} on (0, inf).
struct GaussLaguerreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLaguerreRule gauss_laguerre(int order);

// Coefficients of `signal` for n = 0..N via Gauss-Laguerre quadrature
// after the substitution tau = kappa t. Requires quad_order >= N+1.
std::vector<double> laguerre_coefficients(const std::function<double(double)>& signal,
                                          const LaguerreParams& params, int quad_order);

// kappa * sum_n coeffs[n] L_n(kappa t)
double laguerre_expand(std::span<const double> coeffs, const LaguerreParams& params, double t);

} // namespace cavrec
