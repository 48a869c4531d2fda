#pragma once

// Fundamental-solution sequence of the Laguerre-transformed wave equation:
//   Phi_n(x,y) = K0(gamma r) v_n(r) + K1(gamma r) w_n(r),  r = |x-y|,
// with v_n, w_n polynomials built from the triangular coefficient table
// a_{n,k}, and the derivative companion
//   PhiTilde_n(r) = K1(gamma r) vt_n(r) + K0(gamma r) wt_n(r) = -d Phi_n/dr.

#include <span>
#include <vector>

#include "cavrec/laguerre.hpp"

namespace cavrec {

struct CoefficientTable {
    // entries[n][k] = a_{n,k}, 0 <= k <= n <= N
    std::vector<std::vector<double>> entries;
    double gamma = 0.0;
    std::vector<double> betas;   // beta_0..beta_N

    double a(int n, int k) const;
};

CoefficientTable build_coefficient_table(const LaguerreParams& params);

class FundamentalSequence {
public:
    explicit FundamentalSequence(const LaguerreParams& params);

    int max_index() const { return params_.max_index(); }
    double gamma() const { return table_.gamma; }
    const LaguerreParams& params() const { return params_; }
    const CoefficientTable& table() const { return table_; }

    double poly_v(int n, double r) const;
    double poly_w(int n, double r) const;
    double poly_v_tilde(int n, double r) const;
    double poly_w_tilde(int n, double r) const;

    double phi(int n, double dist) const;
    double phi_tilde(int n, double dist) const;

    // Fills phi[n] (and optionally phi_tilde[n]) for n = 0..N from one pair
    // of K0/K1 evaluations; this is the kernel-assembly fast path.
    void eval_all(double dist, std::span<double> phi_out, std::span<double> phi_tilde_out) const;
    void eval_all_with(double k0, double k1, double dist, std::span<double> phi_out,
                       std::span<double> phi_tilde_out) const;

private:
    LaguerreParams params_;
    CoefficientTable table_;
    // Horner coefficients in r^2; w/wt carry an outer factor r.
    std::vector<std::vector<double>> vc_, wc_, vtc_, wtc_;

    double horner_even(const std::vector<double>& c, double r2) const;
};

} // namespace cavrec
