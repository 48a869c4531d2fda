#include "cavrec/fundamental_solution.hpp"

#include <cmath>
#include <stdexcept>

#include "cavrec/special_functions.hpp"

namespace cavrec {

double CoefficientTable::a(int n, int k) const {
    if (n < 0 || n >= static_cast<int>(entries.size()) || k < 0 || k > n)
        throw std::out_of_range("CoefficientTable: index outside triangle");
    return entries[n][k];
}

CoefficientTable build_coefficient_table(const LaguerreParams& params) {
    const int N = params.max_index();
    CoefficientTable t;
    t.gamma = params.gamma();
    t.betas.resize(N + 1);
    for (int k = 0; k <= N; ++k) t.betas[k] = params.beta(k);

    t.entries.resize(N + 1);
    t.entries[0] = {1.0};
    const double g = t.gamma;
    for (int n = 1; n <= N; ++n) {
        auto& row = t.entries[n];
        row.assign(n + 1, 0.0);
        row[0] = 1.0;
        row[n] = -params.beta(1) * t.entries[n - 1][n - 1] / (2.0 * g * n);
        for (int k = n - 1; k >= 1; --k) {
            double s = 0.0;
            for (int m = k - 1; m <= n - 1; ++m)
                s += params.beta(n - m) * t.entries[m][k - 1];
            const double half = (k + 1) / 2;   // floor((k+1)/2)
            row[k] = (4.0 * half * half * row[k + 1] - s) / (2.0 * g * k);
        }
    }
    return t;
}

FundamentalSequence::FundamentalSequence(const LaguerreParams& params)
    : params_(params), table_(build_coefficient_table(params)) {
    const int N = params_.max_index();
    const double g = table_.gamma;
    vc_.resize(N + 1);
    wc_.resize(N + 1);
    vtc_.resize(N + 1);
    wtc_.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        const auto& a = table_.entries[n];
        auto at = [&](int k) { return (k >= 0 && k <= n) ? a[k] : 0.0; };
        for (int k = 0; 2 * k <= n; ++k) vc_[n].push_back(a[2 * k]);
        for (int k = 0; 2 * k + 1 <= n; ++k) wc_[n].push_back(a[2 * k + 1]);
        // vt: coefficient of r^{2m} is gamma a_{n,2m} - 2m a_{n,2m+1}
        for (int m = 0; 2 * m <= n; ++m) vtc_[n].push_back(g * at(2 * m) - 2.0 * m * at(2 * m + 1));
        // wt: coefficient of r^{2k+1} is gamma a_{n,2k+1} - 2(k+1) a_{n,2k+2}
        for (int k = 0; 2 * k + 1 <= n || 2 * k + 2 <= n; ++k)
            wtc_[n].push_back(g * at(2 * k + 1) - 2.0 * (k + 1) * at(2 * k + 2));
    }
}

double FundamentalSequence::horner_even(const std::vector<double>& c, double r2) const {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r2 + *it;
    return acc;
}

double FundamentalSequence::poly_v(int n, double r) const {
    if (n < 0 || n > max_index()) throw std::out_of_range("poly_v: index");
    return horner_even(vc_[n], r * r);
}

double FundamentalSequence::poly_w(int n, double r) const {
    if (n < 0 || n > max_index()) throw std::out_of_range("poly_w: index");
    if (wc_[n].empty()) return 0.0;
    return r * horner_even(wc_[n], r * r);
}

double FundamentalSequence::poly_v_tilde(int n, double r) const {
    if (n < 0 || n > max_index()) throw std::out_of_range("poly_v_tilde: index");
    return horner_even(vtc_[n], r * r);
}

double FundamentalSequence::poly_w_tilde(int n, double r) const {
    if (n < 0 || n > max_index()) throw std::out_of_range("poly_w_tilde: index");
    if (wtc_[n].empty()) return 0.0;
    return r * horner_even(wtc_[n], r * r);
}

double FundamentalSequence::phi(int n, double dist) const {
    if (!(dist > 0.0)) throw std::domain_error("phi: nonpositive distance");
    const double g = table_.gamma;
    return bessel_k0(g * dist) * poly_v(n, dist) + bessel_k1(g * dist) * poly_w(n, dist);
}

double FundamentalSequence::phi_tilde(int n, double dist) const {
    if (!(dist > 0.0)) throw std::domain_error("phi_tilde: nonpositive distance");
    const double g = table_.gamma;
    return bessel_k1(g * dist) * poly_v_tilde(n, dist) + bessel_k0(g * dist) * poly_w_tilde(n, dist);
}

void FundamentalSequence::eval_all(double dist, std::span<double> phi_out,
                                   std::span<double> phi_tilde_out) const {
    if (!(dist > 0.0)) throw std::domain_error("eval_all: nonpositive distance");
    const BesselSet bes = bessel_all(table_.gamma * dist);
    eval_all_with(bes.k0, bes.k1, dist, phi_out, phi_tilde_out);
}

void FundamentalSequence::eval_all_with(double k0, double k1, double dist,
                                        std::span<double> phi_out,
                                        std::span<double> phi_tilde_out) const {
    const double r2 = dist * dist;
    for (std::size_t n = 0; n < phi_out.size(); ++n) {
        double w = wc_[n].empty() ? 0.0 : dist * horner_even(wc_[n], r2);
        phi_out[n] = k0 * horner_even(vc_[n], r2) + k1 * w;
    }
    for (std::size_t n = 0; n < phi_tilde_out.size(); ++n) {
        double wt = wtc_[n].empty() ? 0.0 : dist * horner_even(wtc_[n], r2);
        phi_tilde_out[n] = k1 * horner_even(vtc_[n], r2) + k0 * wt;
    }
}

} // namespace cavrec
