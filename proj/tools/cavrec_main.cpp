// cavrec: simulate Cauchy data for the annular wave problem and
// reconstruct the interior boundary from it.
//
//   cavrec simulate --example 1 --out out/
//   cavrec invert   --example 1 --data out/cauchy_data.csv --out out/
//   cavrec full     --example 2 --noise 0.03 --seed 7 --out out/

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cavrec/csv_io.hpp"
#include "cavrec/forward_solver.hpp"
#include "cavrec/geometry.hpp"
#include "cavrec/inverse_solver.hpp"
#include "cavrec/svg.hpp"

namespace fs = std::filesystem;
using namespace cavrec;

namespace {

struct RunConfig {
    int example = 1;                 // 1 | 2 | 0 (custom)
    double kappa = 1.0;
    double wave_speed = 1.0;         // the paper's "alpha = 1" is read as the wave speed
    int n_coeffs = 10;               // N
    int m_total = 64;                // inversion grid nodes
    int m_half = 0;                  // if set, m_total = 2 * m_half (s_j = j pi/m convention)
    double noise = 0.0;
    std::uint64_t seed = 7;
    bool noise_f_only = false;
    std::string out_dir = "out";
    std::string data_file;

    // inverse settings
    double lambda0 = -1.0;           // <0: example preset
    double r0 = -1.0;
    int trig_degree = -1;
    int max_iterations = -1;
    double reg_decay = 0.9;
    double stop_update_tol = 1e-4;
    double stop_residual_tol = 0.0;
    double discrepancy_factor = 1.25;
    double sobolev_weight = -1.0;

    // custom geometry: inner truth as trig radial coefficients, outer circle
    std::vector<double> custom_inner;
    double custom_outer_radius = 1.0;
};

struct Geometry {
    std::shared_ptr<const Curve> inner_true;   // may be null for invert-from-file
    std::shared_ptr<const Curve> outer;
};

Geometry make_geometry(const RunConfig& cfg) {
    Geometry g;
    if (cfg.example == 1) {
        g.inner_true = make_example_curve(ExampleCurve::rounded_rectangle);
        g.outer = make_example_curve(ExampleCurve::unit_circle);
    } else if (cfg.example == 2) {
        g.inner_true = make_example_curve(ExampleCurve::apple_inner);
        g.outer = make_example_curve(ExampleCurve::apple_outer);
    } else {
        if (cfg.custom_inner.empty())
            throw std::runtime_error("custom geometry needs --inner-coeffs");
        TrigPolynomial poly{std::vector<double>(cfg.custom_inner)};
        g.inner_true = std::make_shared<RadialCurve>(
            std::make_shared<TrigRadialProfile>(poly), Vec2(0, 0), -1);
        g.outer = make_example_curve(ExampleCurve::circle, cfg.custom_outer_radius);
    }
    return g;
}

InverseConfig make_inverse_config(const RunConfig& cfg, double data_noise) {
    InverseConfig inv;
    inv.trig_degree = cfg.trig_degree >= 0 ? cfg.trig_degree : (cfg.example == 2 ? 5 : 13);
    inv.reg_lambda_initial = cfg.lambda0 > 0 ? cfg.lambda0 : (cfg.example == 2 ? 1e-3 : 1e-2);
    inv.initial_radius = cfg.r0 > 0 ? cfg.r0 : (cfg.example == 2 ? 0.6 : 0.8);
    inv.max_iterations = cfg.max_iterations > 0 ? cfg.max_iterations : 50;
    inv.reg_decay = cfg.reg_decay;
    inv.stop_update_tol = cfg.stop_update_tol;
    inv.stop_residual_tol = cfg.stop_residual_tol;
    inv.discrepancy_factor = cfg.discrepancy_factor;
    inv.sobolev_weight = cfg.sobolev_weight;
    inv.noise_level = data_noise;
    return inv;
}

CauchyData run_simulation(const RunConfig& cfg, const Geometry& geom) {
    LaguerreParams params(cfg.kappa, cfg.wave_speed, cfg.n_coeffs + 1);
    SimulationSetup setup{geom.inner_true,
                          geom.outer,
                          params,
                          cfg.m_total,
                          [](int, double) { return 0.0; },
                          [&](int n, double) { return paper_dirichlet_coefficient(cfg.kappa, n); },
                          cfg.noise,
                          cfg.seed,
                          !cfg.noise_f_only};
    return simulate_cauchy(setup);
}

int run_inversion(const RunConfig& cfg, const Geometry& geom, const CauchyData& data,
                  const fs::path& out) {
    const InverseConfig inv = make_inverse_config(cfg, data.noise_level);
    LaguerreParams params(data.kappa, data.wave_speed, data.n_terms());
    const ReconstructionResult res = reconstruct(inv, data, geom.outer, params);

    write_history_csv(out / "history.csv", res.history);
    RadialCurve rec(std::make_shared<TrigRadialProfile>(res.radial), Vec2(0, 0), -1);
    write_curve_csv(out / "reconstruction.csv", rec, 256);

    TrigPolynomial guess(inv.trig_degree);
    guess.coeffs[0] = inv.initial_radius;
    RadialCurve guess_curve(std::make_shared<TrigRadialProfile>(guess), Vec2(0, 0), -1);
    write_overlay_svg(out / "overlay.svg", *geom.outer, geom.inner_true.get(), guess_curve, rec);

    std::cout << "status: " << to_string(res.status) << " after " << res.history.size()
              << " iterations";
    if (!res.history.empty())
        std::cout << " (residual " << res.history.back().residual << ")";
    std::cout << "\n";
    if (!res.message.empty()) std::cout << "note: " << res.message << "\n";
    if (geom.inner_true) {
        const double hd = hausdorff_distance(sample_curve(rec, 512),
                                             sample_curve(*geom.inner_true, 512));
        std::cout << "hausdorff distance to true boundary: " << hd << "\n";
    }
    switch (res.status) {
    case ReconstructionStatus::converged: return 0;
    case ReconstructionStatus::max_iterations:
    case ReconstructionStatus::stalled: return 2;
    case ReconstructionStatus::failed: return 1;
    }
    return 1;
}

void echo_config(const CLI::App& app, const fs::path& out) {
    std::ofstream f(out / "resolved_config.ini");
    f << app.config_to_str(true, true);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary reconstruction for the wave equation in an annular domain"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI/TOML file");

    RunConfig cfg;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--example", cfg.example, "example geometry preset (1 or 2, 0 = custom)")
            ->check(CLI::Range(0, 2))
            ->capture_default_str();
        cmd->add_option("--kappa", cfg.kappa, "Laguerre transform scale")->capture_default_str();
        cmd->add_option("--wave-speed", cfg.wave_speed, "wave speed a")->capture_default_str();
        cmd->add_option("-N,--n-coeffs", cfg.n_coeffs, "highest Laguerre index N")
            ->capture_default_str();
        cmd->add_option("-M,--nodes", cfg.m_total, "quadrature/collocation nodes per curve")
            ->capture_default_str();
        cmd->add_option("--m-half", cfg.m_half,
                        "node count in the s_j = j pi/M convention (sets nodes = 2*M)");
        cmd->add_option("--noise", cfg.noise, "relative L2 noise level")->capture_default_str();
        cmd->add_option("--seed", cfg.seed, "noise seed")->capture_default_str();
        cmd->add_flag("--noise-f-only", cfg.noise_f_only, "perturb only the Dirichlet trace");
        cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
        cmd->add_option("--inner-coeffs", cfg.custom_inner,
                        "custom true interior radial trig coefficients (example 0)");
        cmd->add_option("--outer-radius", cfg.custom_outer_radius,
                        "custom exterior circle radius (example 0)");
        return cmd;
    };
    auto add_inverse = [&](CLI::App* cmd) {
        cmd->add_option("--lambda", cfg.lambda0, "initial regularization parameter");
        cmd->add_option("--iterations", cfg.max_iterations, "iteration cap");
        cmd->add_option("-J,--trig-degree", cfg.trig_degree, "degree of the radial update");
        cmd->add_option("--r0", cfg.r0, "initial guess radius");
        cmd->add_option("--decay", cfg.reg_decay, "lambda decay per iteration")
            ->capture_default_str();
        cmd->add_option("--stop-update-tol", cfg.stop_update_tol, "update-norm stop")
            ->capture_default_str();
        cmd->add_option("--stop-residual-tol", cfg.stop_residual_tol, "absolute residual stop");
        cmd->add_option("--discrepancy-factor", cfg.discrepancy_factor,
                        "Morozov factor for noisy data")->capture_default_str();
        cmd->add_option("--sobolev", cfg.sobolev_weight,
                        "H1 penalty weight (<0: automatic for noisy data)");
        return cmd;
    };

    CLI::App* sim = add_common(app.add_subcommand("simulate", "simulate Cauchy data"));
    CLI::App* inv = add_inverse(add_common(app.add_subcommand("invert", "reconstruct from data")));
    inv->add_option("--data", cfg.data_file, "Cauchy data CSV (default <out>/cauchy_data.csv)");
    CLI::App* full = add_inverse(add_common(app.add_subcommand("full", "simulate then invert")));

    CLI11_PARSE(app, argc, argv);

    try {
        if (cfg.m_half > 0) cfg.m_total = 2 * cfg.m_half;
        const fs::path out(cfg.out_dir);
        fs::create_directories(out);
        echo_config(app, out);
        const Geometry geom = make_geometry(cfg);

        if (sim->parsed()) {
            const CauchyData data = run_simulation(cfg, geom);
            write_cauchy_csv(out / "cauchy_data.csv", data);
            write_curve_csv(out / "gamma2.csv", *geom.outer, 256);
            if (geom.inner_true) write_curve_csv(out / "gamma1_true.csv", *geom.inner_true, 256);
            std::cout << "wrote " << (out / "cauchy_data.csv").string() << "\n";
            return 0;
        }
        if (inv->parsed()) {
            const fs::path dataPath =
                cfg.data_file.empty() ? out / "cauchy_data.csv" : fs::path(cfg.data_file);
            const CauchyData data = read_cauchy_csv(dataPath);
            return run_inversion(cfg, geom, data, out);
        }
        if (full->parsed()) {
            const CauchyData data = run_simulation(cfg, geom);
            write_cauchy_csv(out / "cauchy_data.csv", data);
            write_curve_csv(out / "gamma2.csv", *geom.outer, 256);
            if (geom.inner_true) write_curve_csv(out / "gamma1_true.csv", *geom.inner_true, 256);
            return run_inversion(cfg, geom, data, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
