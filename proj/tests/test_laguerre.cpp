#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cavrec/laguerre.hpp"

using namespace cavrec;

namespace {

// explicit sum L_n(x) = sum_k C(n,k) (-1)^k x^k / k!
double laguerre_explicit(int n, double x) {
    double sum = 0.0, binom = 1.0, fact = 1.0, xp = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            binom = binom * (n - k + 1) / k;
            fact *= k;
            xp *= x;
        }
        sum += ((k % 2) ? -1.0 : 1.0) * binom * xp / fact;
    }
    return sum;
}

} // namespace

TEST_CASE("laguerre polynomial basics") {
    for (double x : {-3.0, 0.0, 0.7, 12.0}) CHECK(laguerre_poly(0, x) == 1.0);
    CHECK(laguerre_poly(1, 2.5) == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(laguerre_poly(5, 1.0) == doctest::Approx(laguerre_explicit(5, 1.0)).epsilon(1e-14));
    CHECK(laguerre_poly(9, 3.7) == doctest::Approx(laguerre_explicit(9, 3.7)).epsilon(1e-12));
    CHECK_THROWS_AS(laguerre_poly(-1, 0.0), std::domain_error);
}

TEST_CASE("recurrence residual vanishes") {
    for (int k = 1; k < 12; ++k)
        for (double x = -2.0; x <= 8.0; x += 0.5) {
            const double resid = (k + 1.0) * laguerre_poly(k + 1, x)
                                 - (2.0 * k + 1.0 - x) * laguerre_poly(k, x)
                                 + k * laguerre_poly(k - 1, x);
            CHECK(std::abs(resid) < 1e-11 * std::max(1.0, std::abs(laguerre_poly(k, x))));
        }
}

TEST_CASE("params, beta, gamma") {
    LaguerreParams p(1.0, 1.0, 11);
    CHECK(p.beta(0) == 1.0);
    CHECK(p.beta(3) == 4.0);
    CHECK(p.gamma() == 1.0);
    LaguerreParams p2(2.0, 1.0, 4);
    CHECK(p2.beta(0) == 4.0);
    CHECK(p2.gamma() == 2.0);
    // gamma^2 = beta_0, betas strictly increasing
    LaguerreParams p3(0.8, 1.3, 6);
    CHECK(p3.gamma() * p3.gamma() == doctest::Approx(p3.beta(0)).epsilon(1e-15));
    for (int k = 0; k < 5; ++k) CHECK(p3.beta(k + 1) > p3.beta(k));

    CHECK_THROWS_AS(LaguerreParams(0.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(LaguerreParams(1.0, -1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(LaguerreParams(1.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("coefficients of L_m(kappa t) are the scaled unit vector") {
    LaguerreParams p(1.3, 0.9, 11);
    for (int m : {0, 4, 10}) {
        auto c = laguerre_coefficients([&](double t) { return laguerre_poly(m, p.kappa * t); },
                                       p, 40);
        for (int n = 0; n <= 10; ++n) {
            const double want = n == m ? 1.0 / p.kappa : 0.0;
            CHECK(std::abs(c[n] - want) < 1e-12);
        }
    }
}

TEST_CASE("zero signal, exponential signal") {
    LaguerreParams p(1.0, 1.0, 11);
    auto zero = laguerre_coefficients([](double) { return 0.0; }, p, 40);
    for (double c : zero) CHECK(c == 0.0);

    // signal e^{-kappa t}, kappa = 1: coefficient n is 2^{-(n+1)}
    auto ec = laguerre_coefficients([](double t) { return std::exp(-t); }, p, 40);
    for (int n = 0; n <= 10; ++n)
        CHECK(ec[n] == doctest::Approx(std::pow(2.0, -(n + 1))).epsilon(1e-12));

    // brute-force quadrature cross-check for a couple of indices
    for (int n : {0, 3}) {
        double acc = 0.0;
        const int steps = 400000;
        const double tmax = 60.0;
        for (int i = 0; i < steps; ++i) {
            const double t = (i + 0.5) * tmax / steps;
            acc += std::exp(-t) * laguerre_poly(n, t) * std::exp(-t) * tmax / steps;
        }
        CHECK(ec[n] == doctest::Approx(acc).epsilon(1e-6));
    }
}

TEST_CASE("quadrature order guard") {
    LaguerreParams p(1.0, 1.0, 11);
    CHECK_THROWS_AS(laguerre_coefficients([](double) { return 0.0; }, p, 10),
                    std::invalid_argument);
}

TEST_CASE("expand basics and roundtrip") {
    LaguerreParams p(0.7, 1.0, 8);
    std::vector<double> coeffs(8, 0.0);
    CHECK(laguerre_expand(coeffs, p, 1.0) == 0.0);

    coeffs[3] = 1.0 / p.kappa;
    for (double t : {0.0, 0.4, 2.0})
        CHECK(laguerre_expand(coeffs, p, t)
              == doctest::Approx(laguerre_poly(3, p.kappa * t)).epsilon(1e-13));

    // roundtrip on a combination of L_0..L_7
    auto f = [&](double t) {
        double acc = 0.0;
        for (int n = 0; n < 8; ++n) acc += (n + 1) * 0.1 * laguerre_poly(n, p.kappa * t);
        return acc;
    };
    auto c = laguerre_coefficients(f, p, 40);
    for (double t : {0.1, 0.9, 3.3})
        CHECK(laguerre_expand(c, p, t) == doctest::Approx(f(t)).epsilon(1e-10));
}

TEST_CASE("gauss-laguerre rule integrates polynomials exactly") {
    auto rule = gauss_laguerre(12);
    // int e^{-x} x^k = k!
    double fact = 1.0;
    for (int k = 0; k <= 10; ++k) {
        if (k > 0) fact *= k;
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * std::pow(rule.nodes[i], k);
        CHECK(acc == doctest::Approx(fact).epsilon(1e-12));
    }
}
