#include "cavrec/csv_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cavrec {
namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void parse_error(const std::filesystem::path& path, int line, const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

} // namespace

void write_cauchy_csv(const std::filesystem::path& path, const CauchyData& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "# cavrec cauchy data\n";
    out << "# kappa=" << fmt(data.kappa) << " wave_speed=" << fmt(data.wave_speed)
        << " N=" << data.n_terms() - 1 << " M_total=" << data.m_total
        << " noise=" << fmt(data.noise_level) << " seed=" << data.seed << "\n";
    out << "n,node_index,s,f_value,g_value\n";
    for (int n = 0; n < data.n_terms(); ++n)
        for (int j = 0; j < data.m_total; ++j) {
            const double s = 2.0 * M_PI * j / data.m_total;
            out << n << ',' << j << ',' << fmt(s) << ',' << fmt(data.f[n](j)) << ','
                << fmt(data.g[n](j)) << "\n";
        }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

CauchyData read_cauchy_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    CauchyData data;
    int N = -1;
    std::string line;
    int lineno = 0;
    bool have_meta = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            unsigned long long seed = 0;
            int m = 0, nn = 0;
            double kappa = 0, a = 0, noise = 0;
            if (std::sscanf(line.c_str(), "# kappa=%lf wave_speed=%lf N=%d M_total=%d noise=%lf seed=%llu",
                            &kappa, &a, &nn, &m, &noise, &seed) == 6) {
                data.kappa = kappa;
                data.wave_speed = a;
                data.m_total = m;
                data.noise_level = noise;
                data.seed = seed;
                N = nn;
                have_meta = true;
            }
            continue;
        }
        if (line.rfind("n,", 0) == 0) continue;   // column header
        if (!have_meta) parse_error(path, lineno, "data row before metadata header");
        if (data.f.empty()) {
            data.f.assign(N + 1, Eigen::VectorXd::Zero(data.m_total));
            data.g.assign(N + 1, Eigen::VectorXd::Zero(data.m_total));
        }
        int n = 0, j = 0;
        double s = 0, fv = 0, gv = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf", &n, &j, &s, &fv, &gv) != 5)
            parse_error(path, lineno, "malformed data row");
        if (n < 0 || n > N || j < 0 || j >= data.m_total)
            parse_error(path, lineno, "index out of range");
        data.f[n](j) = fv;
        data.g[n](j) = gv;
    }
    if (!have_meta || data.f.empty())
        throw std::runtime_error(path.string() + ": missing metadata or data rows");
    return data;
}

void write_curve_csv(const std::filesystem::path& path, const Curve& curve, int samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "s,x1,x2\n";
    for (int i = 0; i < samples; ++i) {
        const double s = 2.0 * M_PI * i / samples;
        const Vec2 p = curve.point(s);
        out << fmt(s) << ',' << fmt(p.x()) << ',' << fmt(p.y()) << "\n";
    }
}

void write_history_csv(const std::filesystem::path& path,
                       const std::vector<IterationRecord>& history) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "iteration,lambda,residual,update_norm";
    if (!history.empty())
        for (std::size_t j = 0; j < history.front().radial_coeffs.size(); ++j) out << ",q" << j;
    out << "\n";
    for (const auto& rec : history) {
        out << rec.iteration << ',' << fmt(rec.lambda) << ',' << fmt(rec.residual) << ','
            << fmt(rec.update_norm);
        for (double c : rec.radial_coeffs) out << ',' << fmt(c);
        out << "\n";
    }
}

} // namespace cavrec
