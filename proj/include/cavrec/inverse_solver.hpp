#pragma once

// Two-step boundary reconstruction: given Cauchy data on the exterior
// boundary, each iteration (1) solves the well-posed field+data system for
// the densities on the current geometry, then (2) collocates the boundary
// linearization, solves the regularized normal equations for a trig update
// q of the radial function and applies r <- r + q with step control.
//
// Step control: the damped step must keep the radius positive (bisection)
// and must not grow the nonlinear data residual by more than a couple of
// percent (backtracking); a rejected step is recomputed with a boosted
// regularization parameter. The scheduled lambda decays geometrically over
// accepted iterations. Runs with known data noise stop by the discrepancy
// principle and default to an H1 coefficient penalty.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavrec/forward_solver.hpp"

namespace cavrec {

struct InverseConfig {
    int trig_degree = 13;              // J
    double reg_lambda_initial = 1e-2;  // lambda_0
    double reg_decay = 0.9;            // lambda_i = lambda_0 * decay^i
    int max_iterations = 50;
    double stop_update_tol = 1e-4;     // L2 norm of the applied update
    double stop_residual_tol = 0.0;    // absolute stacked residual, 0 = off
    double initial_radius = 0.8;       // r_0
    double noise_level = 0.0;          // known data noise, drives discrepancy stop
    double discrepancy_factor = 1.25;
    double sobolev_weight = -1.0;      // <0: 1.0 when noise_level > 0, else 0
    double min_radius = 0.05;
    int positivity_halvings = 20;
    int max_backtracks = 10;
    double backtrack_accept = 1.02;
    int lambda_retries = 3;
    double lambda_boost = 4.0;

    void validate() const;
};

struct IterationRecord {
    int iteration = 0;
    double lambda = 0.0;
    double residual = 0.0;        // stacked L2 residual of the data equation
    double update_norm = 0.0;     // L2 norm of the applied q
    std::vector<double> radial_coeffs;
};

enum class ReconstructionStatus { converged, max_iterations, stalled, failed };

std::string to_string(ReconstructionStatus s);

struct ReconstructionResult {
    ReconstructionStatus status = ReconstructionStatus::failed;
    TrigPolynomial radial;                 // reconstructed radial coefficients
    std::vector<IterationRecord> history;
    std::string message;
};

// Step 1: densities from the field equation on Gamma1 (u_n = 0) and the
// data equation on Gamma2 (Neumann trace = g_n).
DensitySequence solve_field_and_data(const KernelContext& ctx, const KernelStacks& stacks,
                                     const CauchyData& cauchy);

// Step 2 system: rows are Gamma2 collocation nodes stacked over n, columns
// the 2J+1 trig basis coefficients; entries carry the exact derivative
// kernel -2 D_{n-m}. b is the residual of the Dirichlet data equation.
void assemble_linearized_system(const KernelContext& ctx, const KernelStacks& stacks,
                                const DensitySequence& densities, const CauchyData& cauchy,
                                int trig_degree, Eigen::MatrixXd& A, Eigen::VectorXd& b);

// argmin |Aq - b|^2 + lambda |P^{1/2} q|^2 via the normal equations;
// penalty defaults to the identity.
TrigPolynomial tikhonov_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double lambda,
                              const Eigen::VectorXd* penalty_diag = nullptr);

ReconstructionResult reconstruct(const InverseConfig& config, const CauchyData& cauchy,
                                 std::shared_ptr<const Curve> outer,
                                 const LaguerreParams& params);

} // namespace cavrec
