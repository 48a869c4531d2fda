#pragma once

// Modified Bessel functions of order zero and one, evaluated from their
// defining power series (I0, I1) and the logarithmic series (K0, K1),
// together with the harmonic-sum function psi used by the K series.
//
// Arguments that occur in the solver are gamma*distance with gamma = kappa/a
// and domain diameters of a few units, so the series converge in a handful
// of terms. Above z = 15 a standard asymptotic expansion takes over.

#include <cstddef>

namespace cavrec {

// psi(0) = 0, psi(n) = sum_{m=1}^n 1/m
double harmonic_psi(int n);

double bessel_i0(double z);
double bessel_i1(double z);
double bessel_k0(double z);
double bessel_k1(double z);

// All four at once, sharing the series bookkeeping; this is the kernel
// assembly hot path.
struct BesselSet {
    double i0, i1, k0, k1;
};
BesselSet bessel_all(double z);

namespace detail {

// Series with an explicit term cap, used by the truncation self-tests.
double i0_series(double z, int max_terms);
double i1_series(double z, int max_terms);
double k0_series(double z, int max_terms);
double k1_series(double z, int max_terms);

constexpr int kSeriesTermCap = 200;
constexpr double kAsymptoticSwitch = 15.0;

} // namespace detail
} // namespace cavrec
