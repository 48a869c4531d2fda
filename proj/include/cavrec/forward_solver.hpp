#pragma once

// Data simulation for the annular Dirichlet problem: solve the recursive
// sequence of Nystrom systems for the single-layer densities, take the
// Neumann trace on the exterior boundary through the jump relation,
// evaluate interior fields, and add relative L2 noise. Simulation runs on
// a doubled grid and subsamples, so inversion never sees its own grid.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cavrec/kernels.hpp"

namespace cavrec {

struct DensitySequence {
    // parametrized densities phi_n^l(s_j) = phi_n^l(x_l(s_j)) |x_l'(s_j)|
    std::vector<Eigen::VectorXd> on_inner;   // per n, Gamma1 nodes
    std::vector<Eigen::VectorXd> on_outer;   // per n, Gamma2 nodes
};

struct CauchyData {
    std::vector<Eigen::VectorXd> f;   // Dirichlet trace on Gamma2 nodes, per n
    std::vector<Eigen::VectorXd> g;   // Neumann trace on Gamma2 nodes, per n
    double kappa = 1.0;
    double wave_speed = 1.0;
    int m_total = 0;
    double noise_level = 0.0;
    std::uint64_t seed = 0;

    int n_terms() const { return static_cast<int>(f.size()); }
};

// Dirichlet data on both curves, per n, sampled at the grid nodes.
using BoundaryValues = std::vector<Eigen::VectorXd>;

// Solves the block Nystrom system for n = 0..N in order, subtracting the
// lower-index memory terms on the right-hand side. Throws on a numerically
// singular system (pivot ratio below 1e-13).
DensitySequence solve_dirichlet_sequence(const KernelContext& ctx, const KernelStacks& stacks,
                                         const BoundaryValues& f_inner,
                                         const BoundaryValues& f_outer);

// Neumann trace on Gamma2 via the jump relation (all memory terms included).
std::vector<Eigen::VectorXd> neumann_trace(const KernelContext& ctx, const KernelStacks& stacks,
                                           const DensitySequence& densities);

// Dirichlet trace of the representation on Gamma2 nodes.
std::vector<Eigen::VectorXd> dirichlet_trace_outer(const KernelStacks& stacks,
                                                   const DensitySequence& densities);

// u_n at an interior point for n = 0..N (trapezoid rule; keep the point at
// least a grid spacing away from both curves).
Eigen::VectorXd evaluate_field(const KernelContext& ctx, const DensitySequence& densities,
                               const Vec2& x);

// Relative L2 noise, independently per Laguerre index; g is perturbed too
// unless perturb_g is false. Same seed, same output.
CauchyData add_noise(const CauchyData& data, double level, std::uint64_t seed,
                     bool perturb_g = true);

// Doubled node count for the direct solve (inverse-crime guard).
int forward_grid_for(int m_inversion);

struct SimulationSetup {
    std::shared_ptr<const Curve> inner;
    std::shared_ptr<const Curve> outer;
    LaguerreParams params;
    int m_inversion;                   // grid the inversion will use
    // per-n Dirichlet boundary functions of the parameter s
    std::function<double(int, double)> f_inner;
    std::function<double(int, double)> f_outer;
    double noise_level = 0.0;
    std::uint64_t seed = 0;
    bool perturb_g = true;
};

// End-to-end simulation: solve on the doubled grid, subsample both traces
// onto the inversion grid, then add noise.
CauchyData simulate_cauchy(const SimulationSetup& setup);

// The paper's exterior Dirichlet coefficients
//   f_{2,n} = e (2 + kappa n (kappa (n-1) - 4)) / (4 (kappa+1)^{n+3}).
double paper_dirichlet_coefficient(double kappa, int n);

} // namespace cavrec
