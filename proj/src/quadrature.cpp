#include "cavrec/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace cavrec {

QuadratureGrid::QuadratureGrid(int m_total) : m_total_(m_total) {
    if (m_total < 4 || m_total % 2 != 0)
        throw std::invalid_argument("QuadratureGrid: node count must be even and >= 4");
    nodes_.resize(m_total_);
    for (int j = 0; j < m_total_; ++j) nodes_[j] = 2.0 * M_PI * j / m_total_;
}

double QuadratureGrid::node(int j) const {
    if (j < 0 || j >= m_total_) throw std::out_of_range("QuadratureGrid: node index");
    return nodes_[j];
}

double periodic_trapezoid(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("periodic_trapezoid: empty values");
    double acc = 0.0;
    for (double v : values) acc += v;
    return 2.0 * M_PI * acc / static_cast<double>(values.size());
}

double grid_l2_norm(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("grid_l2_norm: empty values");
    double acc = 0.0;
    for (double v : values) acc += v * v;
    return std::sqrt(2.0 * M_PI * acc / static_cast<double>(values.size()));
}

std::vector<double> log_weight_row(int m_total) {
    if (m_total < 4 || m_total % 2 != 0)
        throw std::invalid_argument("log_weight_row: node count must be even and >= 4");
    const int half = m_total / 2;
    std::vector<double> row(m_total, 0.0);
    for (int k = 0; k < m_total; ++k) {
        const double ang = 2.0 * M_PI * k / m_total;
        double acc = 0.0;
        for (int m = 1; m < half; ++m) acc -= std::cos(m * ang) / (m * half);
        acc -= std::cos(half * ang) / (2.0 * half * half);
        row[k] = acc;
    }
    return row;
}

std::vector<double> log_weights(const QuadratureGrid& grid, int node_index) {
    if (node_index < 0 || node_index >= grid.size())
        throw std::out_of_range("log_weights: collocation index is not a grid node");
    const auto row = log_weight_row(grid.size());
    std::vector<double> w(grid.size());
    for (int j = 0; j < grid.size(); ++j)
        w[j] = row[((j - node_index) % grid.size() + grid.size()) % grid.size()];
    return w;
}

std::vector<double> trig_resample(std::span<const double> values, int m_dst) {
    const int m_src = static_cast<int>(values.size());
    if (m_src < 4 || m_src % 2 != 0)
        throw std::invalid_argument("trig_resample: source grid must be even and >= 4");
    if (m_dst < 1) throw std::invalid_argument("trig_resample: bad target size");
    if (m_dst == m_src) return {values.begin(), values.end()};
    // nested grids: pure subsampling
    if (m_src % m_dst == 0) {
        const int stride = m_src / m_dst;
        std::vector<double> out(m_dst);
        for (int i = 0; i < m_dst; ++i) out[i] = values[i * stride];
        return out;
    }
    // general case: real DFT coefficients, evaluate the interpolant
    const int half = m_src / 2;
    std::vector<double> a(half + 1, 0.0), b(half + 1, 0.0);
    for (int m = 0; m <= half; ++m) {
        for (int j = 0; j < m_src; ++j) {
            const double s = 2.0 * M_PI * j / m_src;
            a[m] += values[j] * std::cos(m * s);
            b[m] += values[j] * std::sin(m * s);
        }
        a[m] *= 2.0 / m_src;
        b[m] *= 2.0 / m_src;
    }
    std::vector<double> out(m_dst, 0.0);
    for (int i = 0; i < m_dst; ++i) {
        const double s = 2.0 * M_PI * i / m_dst;
        double acc = a[0] / 2.0;
        for (int m = 1; m < half; ++m) acc += a[m] * std::cos(m * s) + b[m] * std::sin(m * s);
        acc += 0.5 * a[half] * std::cos(half * s);   // Nyquist mode, cosine only
        out[i] = acc;
    }
    return out;
}

} // namespace cavrec
