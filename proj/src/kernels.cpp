#include "cavrec/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "cavrec/special_functions.hpp"

namespace cavrec {
namespace {

constexpr double kEuler = 0.5772156649015328606;

double chord_log(double s, double sigma) {
    // ln((4/e) sin^2((s-sigma)/2))
    const double sn = std::sin(0.5 * (s - sigma));
    return std::log(4.0 * sn * sn) - 1.0;
}

void check_curve_index(int k) {
    if (k != 1 && k != 2) throw std::invalid_argument("kernel: curve index must be 1 or 2");
}

} // namespace

KernelContext::KernelContext(std::shared_ptr<const FundamentalSequence> fundamental,
                             std::shared_ptr<const Curve> inner,
                             std::shared_ptr<const Curve> outer,
                             QuadratureGrid grid_)
    : fund(std::move(fundamental)), grid(std::move(grid_)) {
    curves[0] = std::move(inner);
    curves[1] = std::move(outer);
    if (!fund || !curves[0] || !curves[1])
        throw std::invalid_argument("KernelContext: null component");
    const int M = grid.size();
    for (int c = 0; c < 2; ++c) {
        pts[c].resize(M);
        tans[c].resize(M);
        curs[c].resize(M);
        speeds[c].resize(M);
        for (int j = 0; j < M; ++j) {
            const double s = grid.node(j);
            pts[c][j] = curves[c]->point(s);
            tans[c][j] = curves[c]->derivative(s);
            curs[c][j] = curves[c]->second_derivative(s);
            speeds[c][j] = tans[c][j].norm();
        }
    }
}

double kernel_h(const KernelContext& ctx, int l, int k, double s, double sigma) {
    check_curve_index(l);
    check_curve_index(k);
    const Vec2 x = ctx.curve(l).point(s);
    const Vec2 y = ctx.curve(k).point(sigma);
    const Vec2 d = x - y;
    const double dist = d.norm();
    if (!(dist > 0.0)) throw std::domain_error("kernel_h: coincident points");
    const Vec2 t = ctx.curve(l).derivative(s);
    return (d.x() * t.y() - d.y() * t.x()) / dist;
}

double kernel_H(const KernelContext& ctx, int n, int k, int l, double s, double sigma) {
    check_curve_index(k);
    check_curve_index(l);
    const double dist = (ctx.curve(k).point(s) - ctx.curve(l).point(sigma)).norm();
    if (!(dist > 0.0)) throw std::domain_error("kernel_H: coincident points, use the split form");
    return 2.0 * ctx.fund->phi(n, dist);
}

double kernel_Q(const KernelContext& ctx, int n, int k, int l, double s, double sigma) {
    check_curve_index(k);
    check_curve_index(l);
    const Vec2 x = ctx.curve(k).point(s);
    const Vec2 y = ctx.curve(l).point(sigma);
    const double dist = (x - y).norm();
    if (!(dist > 0.0)) throw std::domain_error("kernel_Q: coincident points, use the split form");
    const Vec2 nu = outward_normal(ctx.curve(k), s);
    // d/dnu Phi_n = -PhiTilde_n(d) * (nu . (x-y))/d
    return -2.0 * ctx.fund->phi_tilde(n, dist) * nu.dot(x - y) / dist;
}

std::pair<double, double> split_H(const KernelContext& ctx, int n, int l, double s, double sigma) {
    check_curve_index(l);
    const auto& fund = *ctx.fund;
    const double g = fund.gamma();
    const Vec2 xs = ctx.curve(l).point(s);
    const Vec2 xo = ctx.curve(l).point(sigma);
    const double dist = (xs - xo).norm();
    if (dist > 0.0) {
        const double h1 = -bessel_i0(g * dist) * fund.poly_v(n, dist)
                          + bessel_i1(g * dist) * fund.poly_w(n, dist);
        const double h2 = 2.0 * fund.phi(n, dist) - h1 * chord_log(s, sigma);
        return {h1, h2};
    }
    // diagonal: H1 = -I0(0) v_n(0) = -1; a_{0,1} is read as 0
    const double a_n1 = n >= 1 ? fund.table().a(n, 1) : 0.0;
    const double speed = ctx.curve(l).speed(s);
    const double h2 = -2.0 * kEuler - 1.0 - 2.0 * std::log(g * speed / 2.0) + 2.0 * a_n1 / g;
    return {-1.0, h2};
}

std::pair<double, double> split_Q(const KernelContext& ctx, int n, int l, double s, double sigma) {
    check_curve_index(l);
    const auto& fund = *ctx.fund;
    const double g = fund.gamma();
    const Curve& c = ctx.curve(l);
    const double eta = c.outward_sign();
    const Vec2 xs = c.point(s);
    const Vec2 xo = c.point(sigma);
    const double dist = (xs - xo).norm();
    if (dist > 0.0) {
        // Log factor of Q_n = -2 eta h PhiTilde_n / |x'|; the printed form of
        // Q_{n,1} lacks the -eta/|x'(s)| factor (invisible on a unit circle).
        const double h = kernel_h(ctx, l, l, s, sigma);
        const double q1 = -eta * h / c.speed(s)
                          * (bessel_i1(g * dist) * fund.poly_v_tilde(n, dist)
                             - bessel_i0(g * dist) * fund.poly_w_tilde(n, dist));
        const double qfull = kernel_Q(ctx, n, l, l, s, sigma);
        return {q1, qfull - q1 * chord_log(s, sigma)};
    }
    const Vec2 t = c.derivative(s);
    const Vec2 dd = c.second_derivative(s);
    const double speed = c.speed(s);
    const double q2 = eta * (t.y() * dd.x() - t.x() * dd.y()) / (speed * speed * speed);
    return {0.0, q2};
}

double frechet_kernel_D(const KernelContext& ctx, int n, double s, double sigma) {
    const Vec2 x2 = ctx.curve(2).point(s);
    const Vec2 x1 = ctx.curve(1).point(sigma);
    const double dist = (x2 - x1).norm();
    if (!(dist > 0.0)) throw std::domain_error("frechet_kernel_D: curves intersect");
    const Vec2 chat(std::cos(sigma), std::sin(sigma));
    return -(x2 - x1).dot(chat) / dist * ctx.fund->phi_tilde(n, dist);
}

KernelStacks build_stacks(const KernelContext& ctx) {
    const int M = ctx.grid.size();
    const int N = ctx.n_max();
    const auto& fund = *ctx.fund;
    const double g = fund.gamma();

    KernelStacks st;
    auto alloc = [&](std::vector<Eigen::MatrixXd>& v) {
        v.assign(N + 1, Eigen::MatrixXd::Zero(M, M));
    };
    alloc(st.H11);
    alloc(st.H12);
    alloc(st.H21);
    alloc(st.H22);
    alloc(st.Q21);
    alloc(st.Q22);
    alloc(st.D21);

    const std::vector<double> R = log_weight_row(M);
    // Same-curve weight on the split part: R_{|i-j|} - ln(4 sin^2)/M applied
    // to K1 plus the plain trapezoid weight on the full kernel. The -1 of
    // ln((4/e)...) is folded into the smooth part.
    Eigen::MatrixXd G(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (i == j) { G(i, j) = 0.0; continue; }
            const double sn = std::sin(0.5 * (ctx.grid.node(i) - ctx.grid.node(j)));
            G(i, j) = R[(j - i + M) % M] - std::log(4.0 * sn * sn) / M;
        }

    std::vector<double> phi(N + 1), phit(N + 1);

    // same-curve blocks (l = 1, 2)
    for (int l = 1; l <= 2; ++l) {
        auto& WH = l == 1 ? st.H11 : st.H22;
        auto* WQ = l == 2 ? &st.Q22 : nullptr;
        const int c = l - 1;
        const double eta = ctx.curve(l).outward_sign();
        for (int i = 0; i < M; ++i) {
            for (int j = 0; j < M; ++j) {
                if (i == j) continue;
                const Vec2 d = ctx.pts[c][i] - ctx.pts[c][j];
                const double dist = d.norm();
                const BesselSet bes = bessel_all(g * dist);
                fund.eval_all_with(bes.k0, bes.k1, dist, phi, phit);
                const double i0 = bes.i0;
                const double i1 = bes.i1;
                const double h = (d.x() * ctx.tans[c][i].y() - d.y() * ctx.tans[c][i].x()) / dist;
                const double qgeom = -2.0 * eta * h / ctx.speeds[c][i];
                for (int n = 0; n <= N; ++n) {
                    const double h1 = -i0 * fund.poly_v(n, dist) + i1 * fund.poly_w(n, dist);
                    WH[n](i, j) = h1 * G(i, j) + 2.0 * phi[n] / M;
                    if (WQ) {
                        const double q1 = -eta * h / ctx.speeds[c][i]
                                          * (i1 * fund.poly_v_tilde(n, dist)
                                             - i0 * fund.poly_w_tilde(n, dist));
                        (*WQ)[n](i, j) = q1 * G(i, j) + qgeom * phit[n] / M;
                    }
                }
            }
            // diagonal terms
            const double speed = ctx.speeds[c][i];
            const double logterm = -2.0 * kEuler - 1.0 - 2.0 * std::log(g * speed / 2.0);
            for (int n = 0; n <= N; ++n) {
                const double a_n1 = n >= 1 ? fund.table().a(n, 1) : 0.0;
                const double h2 = logterm + 2.0 * a_n1 / g;
                WH[n](i, i) = -R[0] + (h2 + 1.0) / M;   // H1(s,s) = -1
            }
            if (WQ) {
                const Vec2 t = ctx.tans[c][i];
                const Vec2 dd = ctx.curs[c][i];
                const double q2 = eta * (t.y() * dd.x() - t.x() * dd.y()) / (speed * speed * speed);
                for (int n = 0; n <= N; ++n) (*WQ)[n](i, i) = q2 / M;
            }
        }
    }

    // cross-curve blocks: trapezoid weights, smooth kernels
    const double eta2 = ctx.curve(2).outward_sign();
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            // 1 <- 2 : collocation on Gamma1, density on Gamma2
            {
                const double dist = (ctx.pts[0][i] - ctx.pts[1][j]).norm();
                const BesselSet bes = bessel_all(g * dist);
                fund.eval_all_with(bes.k0, bes.k1, dist, phi, std::span<double>());
                for (int n = 0; n <= N; ++n) st.H12[n](i, j) = 2.0 * phi[n] / M;
            }
            // 2 <- 1
            {
                const Vec2 d = ctx.pts[1][i] - ctx.pts[0][j];
                const double dist = d.norm();
                const BesselSet bes = bessel_all(g * dist);
                fund.eval_all_with(bes.k0, bes.k1, dist, phi, phit);
                const double h = (d.x() * ctx.tans[1][i].y() - d.y() * ctx.tans[1][i].x()) / dist;
                const double qgeom = -2.0 * eta2 * h / ctx.speeds[1][i];
                const double sigma = ctx.grid.node(j);
                const double proj = (d.x() * std::cos(sigma) + d.y() * std::sin(sigma)) / dist;
                for (int n = 0; n <= N; ++n) {
                    st.H21[n](i, j) = 2.0 * phi[n] / M;
                    st.Q21[n](i, j) = qgeom * phit[n] / M;
                    st.D21[n](i, j) = -proj * phit[n] / M;
                }
            }
        }
    }

    return st;
}

} // namespace cavrec
