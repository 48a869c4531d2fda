#include "cavrec/forward_solver.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/LU>

namespace cavrec {
namespace {

void check_pivots(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
    const auto diag = lu.matrixLU().diagonal();
    const double dmax = diag.cwiseAbs().maxCoeff();
    const double dmin = diag.cwiseAbs().minCoeff();
    if (!(dmax > 0.0) || dmin < 1e-13 * dmax)
        throw std::runtime_error("forward_solver: numerically singular Nystrom system");
}

} // namespace

DensitySequence solve_dirichlet_sequence(const KernelContext& ctx, const KernelStacks& stacks,
                                         const BoundaryValues& f_inner,
                                         const BoundaryValues& f_outer) {
    const int M = ctx.grid.size();
    const int N = ctx.n_max();
    if (static_cast<int>(f_inner.size()) != N + 1 || static_cast<int>(f_outer.size()) != N + 1)
        throw std::invalid_argument("solve_dirichlet_sequence: boundary data length mismatch");

    Eigen::MatrixXd A(2 * M, 2 * M);
    A.topLeftCorner(M, M) = stacks.H11[0];
    A.topRightCorner(M, M) = stacks.H12[0];
    A.bottomLeftCorner(M, M) = stacks.H21[0];
    A.bottomRightCorner(M, M) = stacks.H22[0];
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    check_pivots(lu);

    DensitySequence out;
    out.on_inner.resize(N + 1);
    out.on_outer.resize(N + 1);
    Eigen::VectorXd rhs(2 * M);
    for (int n = 0; n <= N; ++n) {
        Eigen::VectorXd r1 = f_inner[n];
        Eigen::VectorXd r2 = f_outer[n];
        for (int m = 0; m < n; ++m) {
            r1 -= stacks.H11[n - m] * out.on_inner[m] + stacks.H12[n - m] * out.on_outer[m];
            r2 -= stacks.H21[n - m] * out.on_inner[m] + stacks.H22[n - m] * out.on_outer[m];
        }
        rhs.head(M) = r1;
        rhs.tail(M) = r2;
        const Eigen::VectorXd sol = lu.solve(rhs);
        out.on_inner[n] = sol.head(M);
        out.on_outer[n] = sol.tail(M);
    }
    return out;
}

std::vector<Eigen::VectorXd> neumann_trace(const KernelContext& ctx, const KernelStacks& stacks,
                                           const DensitySequence& densities) {
    const int M = ctx.grid.size();
    const int N = ctx.n_max();
    Eigen::VectorXd inv_speed(M);
    for (int i = 0; i < M; ++i) inv_speed(i) = 1.0 / ctx.speeds[1][i];

    std::vector<Eigen::VectorXd> g(N + 1);
    for (int n = 0; n <= N; ++n) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(M);
        for (int m = 0; m <= n; ++m) {
            acc += stacks.Q21[n - m] * densities.on_inner[m];
            acc += stacks.Q22[n - m] * densities.on_outer[m];
            acc += inv_speed.cwiseProduct(densities.on_outer[m]);
        }
        g[n] = acc;
    }
    return g;
}

std::vector<Eigen::VectorXd> dirichlet_trace_outer(const KernelStacks& stacks,
                                                   const DensitySequence& densities) {
    const int N = static_cast<int>(densities.on_inner.size()) - 1;
    std::vector<Eigen::VectorXd> f(N + 1);
    for (int n = 0; n <= N; ++n) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(stacks.H21[0].rows());
        for (int m = 0; m <= n; ++m) {
            acc += stacks.H21[n - m] * densities.on_inner[m];
            acc += stacks.H22[n - m] * densities.on_outer[m];
        }
        f[n] = acc;
    }
    return f;
}

Eigen::VectorXd evaluate_field(const KernelContext& ctx, const DensitySequence& densities,
                               const Vec2& x) {
    const int M = ctx.grid.size();
    const int N = ctx.n_max();
    std::vector<double> phi(N + 1);

    Eigen::MatrixXd kin(N + 1, M), kout(N + 1, M);
    for (int j = 0; j < M; ++j) {
        const double din = (x - ctx.pts[0][j]).norm();
        const double dout = (x - ctx.pts[1][j]).norm();
        if (!(din > 0.0) || !(dout > 0.0))
            throw std::domain_error("evaluate_field: point on a boundary curve");
        ctx.fund->eval_all(din, phi, std::span<double>());
        for (int n = 0; n <= N; ++n) kin(n, j) = 2.0 * phi[n] / M;
        ctx.fund->eval_all(dout, phi, std::span<double>());
        for (int n = 0; n <= N; ++n) kout(n, j) = 2.0 * phi[n] / M;
    }

    Eigen::VectorXd u = Eigen::VectorXd::Zero(N + 1);
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= n; ++m)
            u(n) += kin.row(n - m).dot(densities.on_inner[m])
                    + kout.row(n - m).dot(densities.on_outer[m]);
    return u;
}

CauchyData add_noise(const CauchyData& data, double level, std::uint64_t seed, bool perturb_g) {
    if (level < 0.0) throw std::invalid_argument("add_noise: negative level");
    CauchyData out = data;
    out.noise_level = level;
    out.seed = seed;
    if (level == 0.0) return out;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto perturb = [&](Eigen::VectorXd& v) {
        Eigen::VectorXd eta(v.size());
        for (Eigen::Index i = 0; i < eta.size(); ++i) eta(i) = normal(rng);
        const double vn = grid_l2_norm({v.data(), static_cast<std::size_t>(v.size())});
        const double en = grid_l2_norm({eta.data(), static_cast<std::size_t>(eta.size())});
        if (en > 0.0 && vn > 0.0) v += level * vn / en * eta;
    };
    for (auto& fn : out.f) perturb(fn);
    if (perturb_g)
        for (auto& gn : out.g) perturb(gn);
    return out;
}

int forward_grid_for(int m_inversion) { return 2 * m_inversion; }

CauchyData simulate_cauchy(const SimulationSetup& setup) {
    const int mf = forward_grid_for(setup.m_inversion);
    auto fund = std::make_shared<FundamentalSequence>(setup.params);
    KernelContext ctx(fund, setup.inner, setup.outer, QuadratureGrid(mf));
    const KernelStacks stacks = build_stacks(ctx);

    const int N = setup.params.max_index();
    BoundaryValues f1(N + 1), f2(N + 1);
    for (int n = 0; n <= N; ++n) {
        f1[n].resize(mf);
        f2[n].resize(mf);
        for (int j = 0; j < mf; ++j) {
            f1[n](j) = setup.f_inner(n, ctx.grid.node(j));
            f2[n](j) = setup.f_outer(n, ctx.grid.node(j));
        }
    }

    const DensitySequence dens = solve_dirichlet_sequence(ctx, stacks, f1, f2);
    const auto g_fine = neumann_trace(ctx, stacks, dens);

    CauchyData data;
    data.kappa = setup.params.kappa;
    data.wave_speed = setup.params.wave_speed;
    data.m_total = setup.m_inversion;
    data.f.resize(N + 1);
    data.g.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        const auto fsub = trig_resample({f2[n].data(), static_cast<std::size_t>(mf)},
                                        setup.m_inversion);
        const auto gsub = trig_resample({g_fine[n].data(), static_cast<std::size_t>(mf)},
                                        setup.m_inversion);
        data.f[n] = Eigen::Map<const Eigen::VectorXd>(fsub.data(), setup.m_inversion);
        data.g[n] = Eigen::Map<const Eigen::VectorXd>(gsub.data(), setup.m_inversion);
    }
    return add_noise(data, setup.noise_level, setup.seed, setup.perturb_g);
}

double paper_dirichlet_coefficient(double kappa, int n) {
    return std::exp(1.0) * (2.0 + kappa * n * (kappa * (n - 1.0) - 4.0))
           / (4.0 * std::pow(kappa + 1.0, n + 3));
}

} // namespace cavrec
