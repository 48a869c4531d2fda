#include "cavrec/inverse_solver.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace cavrec {
namespace {

double stacked_l2(const std::vector<Eigen::VectorXd>& vs) {
    double acc = 0.0;
    int m = 0;
    for (const auto& v : vs) {
        acc += v.squaredNorm();
        m = static_cast<int>(v.size());
    }
    return std::sqrt(2.0 * M_PI * acc / m);
}

double stacked_l2(const Eigen::VectorXd& v, int m) {
    return std::sqrt(2.0 * M_PI * v.squaredNorm() / m);
}

struct GeometryState {
    RadialCurve curve;
    KernelContext ctx;
    KernelStacks stacks;
    DensitySequence densities;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    double residual = 0.0;
};

GeometryState evaluate_geometry(const RadialCurve& curve, std::shared_ptr<const Curve> outer,
                                std::shared_ptr<const FundamentalSequence> fund,
                                const CauchyData& cauchy, int trig_degree) {
    auto inner = std::make_shared<RadialCurve>(curve);
    KernelContext ctx(fund, inner, std::move(outer), QuadratureGrid(cauchy.m_total));
    KernelStacks stacks = build_stacks(ctx);
    DensitySequence dens = solve_field_and_data(ctx, stacks, cauchy);
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    assemble_linearized_system(ctx, stacks, dens, cauchy, trig_degree, A, b);
    GeometryState st{curve, std::move(ctx), std::move(stacks), std::move(dens),
                     std::move(A), std::move(b), 0.0};
    st.residual = stacked_l2(st.b, cauchy.m_total);
    return st;
}

} // namespace

void InverseConfig::validate() const {
    if (trig_degree < 0) throw std::invalid_argument("InverseConfig: trig_degree < 0");
    if (!(reg_lambda_initial > 0.0)) throw std::invalid_argument("InverseConfig: lambda must be > 0");
    if (!(reg_decay > 0.0) || reg_decay > 1.0)
        throw std::invalid_argument("InverseConfig: reg_decay must be in (0,1]");
    if (max_iterations < 1) throw std::invalid_argument("InverseConfig: max_iterations < 1");
    if (!(stop_update_tol > 0.0)) throw std::invalid_argument("InverseConfig: stop_update_tol <= 0");
    if (stop_residual_tol < 0.0) throw std::invalid_argument("InverseConfig: stop_residual_tol < 0");
    if (!(initial_radius > 0.0)) throw std::invalid_argument("InverseConfig: initial_radius <= 0");
    if (noise_level < 0.0) throw std::invalid_argument("InverseConfig: noise_level < 0");
}

std::string to_string(ReconstructionStatus s) {
    switch (s) {
    case ReconstructionStatus::converged: return "converged";
    case ReconstructionStatus::max_iterations: return "max_iterations";
    case ReconstructionStatus::stalled: return "stalled";
    case ReconstructionStatus::failed: return "failed";
    }
    return "unknown";
}

DensitySequence solve_field_and_data(const KernelContext& ctx, const KernelStacks& stacks,
                                     const CauchyData& cauchy) {
    const int M = ctx.grid.size();
    const int N = ctx.n_max();
    if (cauchy.n_terms() != N + 1)
        throw std::invalid_argument("solve_field_and_data: data index range mismatch");
    if (static_cast<int>(cauchy.g[0].size()) != M)
        throw std::invalid_argument("solve_field_and_data: data grid mismatch");

    Eigen::VectorXd inv_speed(M);
    for (int i = 0; i < M; ++i) inv_speed(i) = 1.0 / ctx.speeds[1][i];

    Eigen::MatrixXd A(2 * M, 2 * M);
    A.topLeftCorner(M, M) = stacks.H11[0];
    A.topRightCorner(M, M) = stacks.H12[0];
    A.bottomLeftCorner(M, M) = stacks.Q21[0];
    A.bottomRightCorner(M, M) = stacks.Q22[0];
    A.bottomRightCorner(M, M) += inv_speed.asDiagonal().toDenseMatrix();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    {
        const auto diag = lu.matrixLU().diagonal();
        const double dmax = diag.cwiseAbs().maxCoeff();
        if (!(dmax > 0.0) || diag.cwiseAbs().minCoeff() < 1e-13 * dmax)
            throw std::runtime_error("solve_field_and_data: singular Nystrom system");
    }

    DensitySequence out;
    out.on_inner.resize(N + 1);
    out.on_outer.resize(N + 1);
    Eigen::VectorXd rhs(2 * M);
    for (int n = 0; n <= N; ++n) {
        Eigen::VectorXd r1 = Eigen::VectorXd::Zero(M);   // u_n = 0 on Gamma1
        Eigen::VectorXd r2 = cauchy.g[n];
        for (int m = 0; m < n; ++m) {
            r1 -= stacks.H11[n - m] * out.on_inner[m] + stacks.H12[n - m] * out.on_outer[m];
            r2 -= stacks.Q21[n - m] * out.on_inner[m] + stacks.Q22[n - m] * out.on_outer[m]
                  + inv_speed.cwiseProduct(out.on_outer[m]);
        }
        rhs.head(M) = r1;
        rhs.tail(M) = r2;
        const Eigen::VectorXd sol = lu.solve(rhs);
        out.on_inner[n] = sol.head(M);
        out.on_outer[n] = sol.tail(M);
    }
    return out;
}

void assemble_linearized_system(const KernelContext& ctx, const KernelStacks& stacks,
                                const DensitySequence& densities, const CauchyData& cauchy,
                                int trig_degree, Eigen::MatrixXd& A, Eigen::VectorXd& b) {
    const int M = ctx.grid.size();
    const int N = ctx.n_max();
    const int cols = 2 * trig_degree + 1;

    // tau_j sampled at the sigma nodes
    Eigen::MatrixXd tau(M, cols);
    for (int j = 0; j < M; ++j)
        for (int c = 0; c < cols; ++c)
            tau(j, c) = TrigPolynomial::basis(c, trig_degree, ctx.grid.node(j));

    A.setZero((N + 1) * M, cols);
    b.resize((N + 1) * M);
    const auto predicted = dirichlet_trace_outer(stacks, densities);
    for (int n = 0; n <= N; ++n) {
        b.segment(n * M, M) = cauchy.f[n] - predicted[n];
        for (int m = 0; m <= n; ++m) {
            // exact derivative of the H^{2,1} block: -2 D_{n-m}
            const Eigen::MatrixXd dw = -2.0 * stacks.D21[n - m];
            A.middleRows(n * M, M) += dw * densities.on_inner[m].asDiagonal() * tau;
        }
    }
}

TrigPolynomial tikhonov_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double lambda,
                              const Eigen::VectorXd* penalty_diag) {
    if (!(lambda > 0.0)) throw std::invalid_argument("tikhonov_solve: lambda must be positive");
    Eigen::MatrixXd normal = A.transpose() * A;
    if (penalty_diag) {
        if (penalty_diag->size() != normal.rows())
            throw std::invalid_argument("tikhonov_solve: penalty size mismatch");
        normal += lambda * penalty_diag->asDiagonal().toDenseMatrix();
    } else {
        normal += lambda * Eigen::MatrixXd::Identity(normal.rows(), normal.cols());
    }
    const Eigen::VectorXd q = Eigen::LDLT<Eigen::MatrixXd>(normal).solve(A.transpose() * b);
    TrigPolynomial poly;
    poly.coeffs.assign(q.data(), q.data() + q.size());
    return poly;
}

ReconstructionResult reconstruct(const InverseConfig& config, const CauchyData& cauchy,
                                 std::shared_ptr<const Curve> outer,
                                 const LaguerreParams& params) {
    config.validate();
    ReconstructionResult result;
    auto fund = std::make_shared<FundamentalSequence>(params);
    const int J = config.trig_degree;
    const int cols = 2 * J + 1;

    Eigen::VectorXd penalty = Eigen::VectorXd::Ones(cols);
    double sob = config.sobolev_weight;
    if (sob < 0.0) sob = config.noise_level > 0.0 ? 1.0 : 0.0;
    if (sob > 0.0)
        for (int c = 1; c < cols; ++c) {
            const int freq = c <= J ? c : c - J;
            penalty(c) = 1.0 + sob * freq * freq;
        }

    TrigPolynomial start(J);
    start.coeffs[0] = config.initial_radius;
    RadialCurve curve(std::make_shared<TrigRadialProfile>(start), Vec2(0, 0), -1);

    double fnorm = stacked_l2(cauchy.f);
    if (!(fnorm > 0.0)) fnorm = 1.0;

    GeometryState state = evaluate_geometry(curve, outer, fund, cauchy, J);
    double lambda = config.reg_lambda_initial;
    try {
        for (int it = 0; it < config.max_iterations; ++it) {
            bool accepted = false;
            TrigPolynomial applied(J);
            GeometryState next = state;
            double lm = lambda;
            for (int retry = 0; retry <= config.lambda_retries && !accepted; ++retry) {
                TrigPolynomial q = tikhonov_solve(state.A, state.b, lm, &penalty);
                const double scale = damp_radial_step(state.curve, q, 256, config.min_radius,
                                                      config.positivity_halvings);
                if (scale == 0.0) { lm *= config.lambda_boost; continue; }
                for (int t = 0; t <= config.max_backtracks; ++t) {
                    TrigPolynomial trial = q;
                    const double f = std::pow(0.5, t);
                    for (auto& c : trial.coeffs) c *= f;
                    RadialCurve cnew = update_radial(state.curve, trial, 256, config.min_radius);
                    GeometryState snew = evaluate_geometry(cnew, outer, fund, cauchy, J);
                    if (snew.residual <= state.residual * config.backtrack_accept) {
                        next = std::move(snew);
                        applied = std::move(trial);
                        accepted = true;
                        break;
                    }
                }
                if (!accepted) lm *= config.lambda_boost;
            }
            if (!accepted) {
                result.status = ReconstructionStatus::stalled;
                result.message = "no acceptable step at iteration " + std::to_string(it);
                break;
            }
            state = std::move(next);
            lambda *= config.reg_decay;

            Eigen::VectorXd qnodes(cauchy.m_total);
            for (int i = 0; i < cauchy.m_total; ++i)
                qnodes(i) = applied.eval(2.0 * M_PI * i / cauchy.m_total);
            const double update_norm = stacked_l2(qnodes, cauchy.m_total);

            IterationRecord rec;
            rec.iteration = it;
            rec.lambda = lm;
            rec.residual = state.residual;
            rec.update_norm = update_norm;
            const auto* prof = dynamic_cast<const TrigRadialProfile*>(&state.curve.profile());
            rec.radial_coeffs = prof->poly().coeffs;
            result.history.push_back(rec);

            if (update_norm < config.stop_update_tol) {
                result.status = ReconstructionStatus::converged;
                break;
            }
            if (config.stop_residual_tol > 0.0 && state.residual < config.stop_residual_tol) {
                result.status = ReconstructionStatus::converged;
                break;
            }
            if (config.noise_level > 0.0
                && state.residual / fnorm <= config.discrepancy_factor * config.noise_level) {
                result.status = ReconstructionStatus::converged;
                break;
            }
            if (it + 1 == config.max_iterations) result.status = ReconstructionStatus::max_iterations;
        }
    } catch (const std::exception& e) {
        result.status = ReconstructionStatus::failed;
        result.message = e.what();
    }
    const auto* prof = dynamic_cast<const TrigRadialProfile*>(&state.curve.profile());
    result.radial = prof->poly();
    return result;
}

} // namespace cavrec
