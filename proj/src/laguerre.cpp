#include "cavrec/laguerre.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace cavrec {

double laguerre_poly(int n, double x) {
    if (n < 0) throw std::domain_error("laguerre_poly: negative order");
    if (n == 0) return 1.0;
    double lm1 = 1.0;       // L_0
    double l = 1.0 - x;     // L_1
    for (int k = 1; k < n; ++k) {
        double lp1 = ((2.0 * k + 1.0 - x) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

LaguerreParams::LaguerreParams(double kappa_, double wave_speed_, int n_terms_)
    : kappa(kappa_), wave_speed(wave_speed_), n_terms(n_terms_) {
    if (!(kappa > 0.0)) throw std::invalid_argument("LaguerreParams: kappa must be positive");
    if (!(wave_speed > 0.0)) throw std::invalid_argument("LaguerreParams: wave speed must be positive");
    if (n_terms < 1) throw std::invalid_argument("LaguerreParams: need at least one coefficient");
}

GaussLaguerreRule gauss_laguerre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_laguerre: order must be positive");
    // Golub-Welsch on the Jacobi matrix: diag 2i+1, offdiag i.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
    for (int i = 0; i < order; ++i) {
        jac(i, i) = 2.0 * i + 1.0;
        if (i + 1 < order) {
            jac(i, i + 1) = i + 1.0;
            jac(i + 1, i) = i + 1.0;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    GaussLaguerreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = v0 * v0;   // mu_0 = int e^{-x} dx = 1
    }
    return rule;
}

std::vector<double> laguerre_coefficients(const std::function<double(double)>& signal,
                                          const LaguerreParams& params, int quad_order) {
    if (quad_order < params.n_terms)
        throw std::invalid_argument("laguerre_coefficients: quadrature order below n_terms");
    GaussLaguerreRule rule = gauss_laguerre(quad_order);
    std::vector<double> samples(quad_order);
    for (int i = 0; i < quad_order; ++i)
        samples[i] = signal(rule.nodes[i] / params.kappa);
    std::vector<double> coeffs(params.n_terms, 0.0);
    for (int n = 0; n < params.n_terms; ++n) {
        double acc = 0.0;
        for (int i = 0; i < quad_order; ++i)
            acc += rule.weights[i] * laguerre_poly(n, rule.nodes[i]) * samples[i];
        coeffs[n] = acc / params.kappa;
    }
    return coeffs;
}

double laguerre_expand(std::span<const double> coeffs, const LaguerreParams& params, double t) {
    if (t < 0.0) throw std::domain_error("laguerre_expand: negative time");
    double acc = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        acc += coeffs[n] * laguerre_poly(static_cast<int>(n), params.kappa * t);
    return params.kappa * acc;
}

} // namespace cavrec
