#pragma once

// Periodic trapezoidal rule on equispaced nodes and the trigonometric
// quadrature weights for the logarithmic kernel ln(4 sin^2((s-sigma)/2)),
// exact for trigonometric polynomials of degree < M/2 (Nystrom method for
// 2pi-periodic integral equations with log singularity).
//
// Convention: M_total equispaced nodes s_j = 2 pi j / M_total; the classical
// s_j = j pi / m grid corresponds to M_total = 2m.

#include <span>
#include <vector>

namespace cavrec {

struct QuadratureGrid {
    explicit QuadratureGrid(int m_total);

    int size() const { return m_total_; }
    double node(int j) const;
    const std::vector<double>& nodes() const { return nodes_; }

private:
    int m_total_;
    std::vector<double> nodes_;
};

// (2 pi / M) sum of the sampled values.
double periodic_trapezoid(std::span<const double> values);

// Discrete L2 norm on the grid: sqrt((2 pi / M) sum v_j^2).
double grid_l2_norm(std::span<const double> values);

// Translation-invariant weight row R_k, k = (j - i) mod M, such that
//   (1/2pi) int_0^2pi ln(4 sin^2((s_i - sigma)/2)) f(sigma) dsigma
//     ~= sum_j R_{(j-i) mod M} f(s_j).
std::vector<double> log_weight_row(int m_total);

// Weights R_j(s_i) for collocation node i (rotation of the row above).
std::vector<double> log_weights(const QuadratureGrid& grid, int node_index);

// Trigonometric resampling of band-limited nodal values onto a grid of
// m_dst equispaced nodes (exact subsampling for nested 2:1 grids).
std::vector<double> trig_resample(std::span<const double> values, int m_dst);

} // namespace cavrec
