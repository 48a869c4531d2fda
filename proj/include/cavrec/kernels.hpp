#pragma once

// Parametrized boundary-integral kernels for the transformed problem:
//   H_n^{k,l}(s,sigma) = 2 Phi_n(x_k(s), x_l(sigma))
//   Q_n^{k,l}(s,sigma) = 2 d/dnu(x_k(s)) Phi_n(x_k(s), x_l(sigma))
// their same-curve splittings against ln((4/e) sin^2((s-sigma)/2)) with the
// explicit diagonal terms, the auxiliary function h, and the kernel D_n of
// the boundary linearization. Quadrature-weighted block matrices for the
// Nystrom systems are assembled here so that distance, Bessel values and
// the polynomial factors are computed once per point pair and shared over n.

#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cavrec/fundamental_solution.hpp"
#include "cavrec/geometry.hpp"
#include "cavrec/quadrature.hpp"

namespace cavrec {

struct KernelContext {
    KernelContext(std::shared_ptr<const FundamentalSequence> fundamental,
                  std::shared_ptr<const Curve> inner,
                  std::shared_ptr<const Curve> outer,
                  QuadratureGrid grid);

    std::shared_ptr<const FundamentalSequence> fund;
    std::shared_ptr<const Curve> curves[2];   // [0] = Gamma1, [1] = Gamma2
    QuadratureGrid grid;

    // node caches, indexed [curve][node]
    std::vector<Vec2> pts[2], tans[2], curs[2];
    std::vector<double> speeds[2];

    const Curve& curve(int l) const { return *curves[l - 1]; }
    int n_max() const { return fund->max_index(); }
};

// h^{l,k}(s,sigma): tangential-rotation projection of the chord, l owns s.
double kernel_h(const KernelContext& ctx, int l, int k, double s, double sigma);

double kernel_H(const KernelContext& ctx, int n, int k, int l, double s, double sigma);
double kernel_Q(const KernelContext& ctx, int n, int k, int l, double s, double sigma);

// Same-curve splittings K = K1 * ln((4/e) sin^2((s-sigma)/2)) + K2,
// returned as (K1, K2); the diagonal s = sigma is handled explicitly.
std::pair<double, double> split_H(const KernelContext& ctx, int n, int l, double s, double sigma);
std::pair<double, double> split_Q(const KernelContext& ctx, int n, int l, double s, double sigma);

// Kernel of the boundary linearization (radial perturbation of Gamma1 seen
// from Gamma2). Note the exact derivative of H^{2,1}_n under r -> r + eps q
// is  dH/deps = -2 q(sigma) D_n(s,sigma).
double frechet_kernel_D(const KernelContext& ctx, int n, double s, double sigma);

// Quadrature-weighted Nystrom blocks: for stacks W, W[n] * phi approximates
// (1/2pi) int K_n(s_i, sigma) phi(sigma) dsigma at all collocation nodes s_i.
// Same-curve blocks use the log-split rule, cross-curve blocks the trapezoid
// rule. D21[n] is the trapezoid-weighted D_n (no extra factors).
struct KernelStacks {
    std::vector<Eigen::MatrixXd> H11, H12, H21, H22, Q21, Q22, D21;
};

KernelStacks build_stacks(const KernelContext& ctx);

} // namespace cavrec
