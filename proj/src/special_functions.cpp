#include "cavrec/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <quadmath.h>

namespace cavrec {
namespace {

// Euler's constant, enough digits for quad precision.
const __float128 kEuler = 0.57721566490153286060651209008240243104Q;

// The K series cancel the log term against the psi sum (about 2z/ln10
// digits lost), so the partial sums are accumulated in __float128 and
// rounded once at the end.
const __float128 kQuadEps = 1e-35Q;

void check_argument(double z) {
    if (!std::isfinite(z)) throw std::domain_error("bessel: non-finite argument");
    if (z < 0.0) throw std::domain_error("bessel: negative argument");
}

__float128 i0q(__float128 z, int max_terms) {
    __float128 q = z * z / 4;
    __float128 term = 1, sum = 1;
    for (int n = 1; n < max_terms; ++n) {
        term *= q / (__float128(n) * n);
        sum += term;
        if (term < kQuadEps * sum) break;
    }
    return sum;
}

__float128 i1q(__float128 z, int max_terms) {
    __float128 q = z * z / 4;
    __float128 term = z / 2, sum = term;
    for (int n = 1; n < max_terms; ++n) {
        term *= q / (__float128(n) * (n + 1));
        sum += term;
        if (term < kQuadEps * sum) break;
    }
    return sum;
}

__float128 k0q(__float128 z, int max_terms) {
    __float128 lg = logq(z / 2) + kEuler;
    __float128 q = z * z / 4;
    // sum_{n>=1} psi(n)/(n!)^2 (z/2)^{2n}
    __float128 coeff = 1, psi = 0, sum = 0;
    for (int n = 1; n < max_terms; ++n) {
        coeff *= q / (__float128(n) * n);
        psi += __float128(1) / n;
        __float128 term = psi * coeff;
        sum += term;
        if (term < kQuadEps * (fabsq(sum) + 1e-300Q)) break;
    }
    return -lg * i0q(z, max_terms) + sum;
}

__float128 k1q(__float128 z, int max_terms) {
    __float128 lg = logq(z / 2) + kEuler;
    __float128 q = z * z / 4;
    // sum_{n>=0} (psi(n+1)+psi(n))/(n!(n+1)!) (z/2)^{2n+1}
    __float128 coeff = z / 2;   // n = 0 factor (z/2)^{1}/(0!·1!)
    __float128 psi_n = 0, psi_n1 = 1;
    __float128 sum = coeff * (psi_n1 + psi_n);
    for (int n = 1; n < max_terms; ++n) {
        coeff *= q / (__float128(n) * (n + 1));
        psi_n = psi_n1;
        psi_n1 += __float128(1) / (n + 1);
        __float128 term = (psi_n1 + psi_n) * coeff;
        sum += term;
        if (term < kQuadEps * fabsq(sum)) break;
    }
    return 1 / z + lg * i1q(z, max_terms) - sum / 2;
}

// Large-argument expansions, mu = 4 nu^2:
//   K_nu(z) ~ sqrt(pi/2z) e^-z  sum_k   t_k,  t_k = t_{k-1} (mu-(2k-1)^2)/(8zk)
//   I_nu(z) ~ e^z/sqrt(2 pi z)  sum_k (-1)^k t_k
double bessel_asymptotic(double z, int nu, bool modified_second_kind) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 40; ++k) {
        double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * z * k);
        if (std::abs(term) >= prev) break;   // divergent tail reached
        sum += modified_second_kind ? term : ((k & 1) ? -term : term);
        prev = std::abs(term);
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    if (modified_second_kind)
        return std::sqrt(M_PI / (2.0 * z)) * std::exp(-z) * sum;
    return std::exp(z) / std::sqrt(2.0 * M_PI * z) * sum;
}

} // namespace

double harmonic_psi(int n) {
    if (n < 0) throw std::domain_error("harmonic_psi: negative index");
    double s = 0.0;
    for (int m = 1; m <= n; ++m) s += 1.0 / m;
    return s;
}

BesselSet bessel_all(double z) {
    check_argument(z);
    if (z == 0.0) throw std::domain_error("bessel_all: K singular at 0");
    if (z > detail::kAsymptoticSwitch)
        return {bessel_asymptotic(z, 0, false), bessel_asymptotic(z, 1, false),
                bessel_asymptotic(z, 0, true), bessel_asymptotic(z, 1, true)};
    const __float128 q = __float128(z) * z / 4;
    const __float128 lg = logq(__float128(z) / 2) + kEuler;
    // running factors (z/2)^{2n}/(n!)^2 and (z/2)^{2n+1}/(n!(n+1)!)
    __float128 ci0 = 1, ci1 = z / 2.0;
    __float128 i0 = ci0, i1 = ci1;
    __float128 psi_n = 0, psi_n1 = 1;
    __float128 k0sum = 0;
    __float128 k1sum = ci1 * (psi_n1 + psi_n);
    for (int n = 1; n < detail::kSeriesTermCap; ++n) {
        ci0 *= q / (__float128(n) * n);
        ci1 *= q / (__float128(n) * (n + 1));
        psi_n = psi_n1;
        psi_n1 += __float128(1) / (n + 1);
        i0 += ci0;
        i1 += ci1;
        k0sum += psi_n * ci0;
        k1sum += (psi_n1 + psi_n) * ci1;
        if (ci0 < kQuadEps * i0 && ci1 < kQuadEps * i1) break;
    }
    BesselSet out;
    out.i0 = static_cast<double>(i0);
    out.i1 = static_cast<double>(i1);
    out.k0 = static_cast<double>(-lg * i0 + k0sum);
    out.k1 = static_cast<double>(1 / __float128(z) + lg * i1 - k1sum / 2);
    return out;
}

double bessel_i0(double z) {
    check_argument(z);
    if (z > detail::kAsymptoticSwitch) return bessel_asymptotic(z, 0, false);
    return static_cast<double>(i0q(z, detail::kSeriesTermCap));
}

double bessel_i1(double z) {
    check_argument(z);
    if (z > detail::kAsymptoticSwitch) return bessel_asymptotic(z, 1, false);
    return static_cast<double>(i1q(z, detail::kSeriesTermCap));
}

double bessel_k0(double z) {
    check_argument(z);
    if (z == 0.0) throw std::domain_error("bessel_k0: logarithmic singularity at 0");
    if (z > detail::kAsymptoticSwitch) return bessel_asymptotic(z, 0, true);
    return static_cast<double>(k0q(z, detail::kSeriesTermCap));
}

double bessel_k1(double z) {
    check_argument(z);
    if (z == 0.0) throw std::domain_error("bessel_k1: pole at 0");
    if (z > detail::kAsymptoticSwitch) return bessel_asymptotic(z, 1, true);
    return static_cast<double>(k1q(z, detail::kSeriesTermCap));
}

namespace detail {

double i0_series(double z, int max_terms) { return static_cast<double>(i0q(z, max_terms)); }
double i1_series(double z, int max_terms) { return static_cast<double>(i1q(z, max_terms)); }
double k0_series(double z, int max_terms) { return static_cast<double>(k0q(z, max_terms)); }
double k1_series(double z, int max_terms) { return static_cast<double>(k1q(z, max_terms)); }

} // namespace detail
} // namespace cavrec
