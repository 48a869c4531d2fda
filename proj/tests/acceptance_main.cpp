// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cavrec/csv_io.hpp"
#include "cavrec/inverse_solver.hpp"
#include "cavrec/special_functions.hpp"
#include "oracles.hpp"

using namespace cavrec;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& metrics) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                metrics.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::shared_ptr<const Curve> inner_circle(double r) {
    TrigPolynomial c(0);
    c.coeffs[0] = r;
    return std::make_shared<RadialCurve>(std::make_shared<TrigRadialProfile>(c), Vec2(0, 0), -1);
}

CauchyData simulate_paper(std::shared_ptr<const Curve> inner, std::shared_ptr<const Curve> outer,
                          int m_inv, double noise, std::uint64_t seed) {
    SimulationSetup s{std::move(inner), std::move(outer), LaguerreParams(1.0, 1.0, 11), m_inv,
                      [](int, double) { return 0.0; },
                      [](int n, double) { return paper_dirichlet_coefficient(1.0, n); },
                      noise, seed, true};
    return simulate_cauchy(s);
}

// ---- criterion 1 ------------------------------------------------------
void criterion_1() {
    double worst_val = 0.0, worst_wron = 0.0;
    for (double z : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        auto rel = [&](double got, const oracle::mp& want) {
            return std::abs((oracle::mp(got) - want) / want).convert_to<double>();
        };
        worst_val = std::max({worst_val, rel(bessel_i0(z), oracle::i0(z)),
                              rel(bessel_i1(z), oracle::i1(z)), rel(bessel_k0(z), oracle::k0(z)),
                              rel(bessel_k1(z), oracle::k1(z))});
        const double w = bessel_i0(z) * bessel_k1(z) + bessel_i1(z) * bessel_k0(z);
        worst_wron = std::max(worst_wron, std::abs(w * z - 1.0));
    }
    report(1, worst_val <= 1e-12 && worst_wron <= 1e-12,
           "special functions vs high-precision oracle and Wronskian",
           "max rel err " + fmt(worst_val) + ", wronskian " + fmt(worst_wron) + ", tol 1e-12");
}

// ---- criterion 2 ------------------------------------------------------
void criterion_2() {
    FundamentalSequence fs(LaguerreParams(1.0, 1.0, 11));
    const LaguerreParams p(1.0, 1.0, 11);
    auto lap5 = [&](int n, double x1, double x2, double h) {
        auto f = [&](double a, double b) { return fs.phi(n, std::hypot(a, b)); };
        return (f(x1 + h, x2) + f(x1 - h, x2) + f(x1, x2 + h) + f(x1, x2 - h) - 4.0 * f(x1, x2))
               / (h * h);
    };
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n)
        for (double d : {0.5, 1.0, 1.5}) {
            const double x = d / std::sqrt(2.0);
            const double h = 1e-3;
            const double lap = (4.0 * lap5(n, x, x, h / 2) - lap5(n, x, x, h)) / 3.0;
            double rhs = 0.0;
            for (int m = 0; m <= n; ++m) rhs += p.beta(n - m) * fs.phi(m, d);
            worst = std::max(worst, std::abs(lap - rhs) / std::max(std::abs(lap), std::abs(rhs)));
        }
    report(2, worst <= 1e-5, "fundamental-solution PDE residual (n = 0..10, d in {0.5,1,1.5})",
           "max rel residual " + fmt(worst) + ", tol 1e-5");
}

// ---- criterion 3 ------------------------------------------------------
void criterion_3() {
    LaguerreParams p(1.0, 1.0, 11);
    double worst = 0.0;
    for (int m = 0; m <= 10; ++m) {
        const auto c = laguerre_coefficients(
            [&](double t) { return laguerre_poly(m, p.kappa * t); }, p, 40);
        for (int n = 0; n <= 10; ++n)
            worst = std::max(worst, std::abs(c[n] - (n == m ? 1.0 / p.kappa : 0.0)));
    }
    report(3, worst <= 1e-10, "Laguerre transform roundtrip on L_m",
           "max coefficient error " + fmt(worst) + ", tol 1e-10");
}

// ---- criterion 4 ------------------------------------------------------
void criterion_4() {
    const int M = 64;
    QuadratureGrid grid(M);
    const auto w = log_weights(grid, 0);
    double worst = 0.0, worst_const = 0.0;
    for (int m = 1; m < 32; ++m) {
        double acc = 0.0;
        for (int j = 0; j < M; ++j) acc += w[j] * std::cos(m * grid.node(j));
        worst = std::max(worst, std::abs(acc + 1.0 / m));
    }
    for (int i : {0, 11, 40}) {
        const auto wi = log_weights(grid, i);
        double acc = 0.0;
        for (int j = 0; j < M; ++j) acc += wi[j];
        worst_const = std::max(worst_const, std::abs(acc));
    }
    report(4, worst <= 1e-12 && worst_const <= 1e-12,
           "logarithmic quadrature identities at M_total = 64",
           "cosine identity err " + fmt(worst) + ", constant err " + fmt(worst_const)
               + ", tol 1e-12");
}

// ---- criterion 5 ------------------------------------------------------
struct ManufacturedErrors {
    double field;
    double trace;
};

ManufacturedErrors manufactured_errors(int m_solve, int m_report) {
    auto fund = std::make_shared<FundamentalSequence>(LaguerreParams(1.0, 1.0, 11));
    KernelContext ctx(fund, make_example_curve(ExampleCurve::rounded_rectangle),
                      make_example_curve(ExampleCurve::unit_circle), QuadratureGrid(m_solve));
    auto stacks = build_stacks(ctx);
    BoundaryValues f1(11), f2(11);
    for (int n = 0; n <= 10; ++n) {
        f1[n].resize(m_solve);
        f2[n].resize(m_solve);
        for (int j = 0; j < m_solve; ++j) {
            f1[n](j) = fund->phi(n, ctx.pts[0][j].norm());
            f2[n](j) = fund->phi(n, ctx.pts[1][j].norm());
        }
    }
    const auto dens = solve_dirichlet_sequence(ctx, stacks, f1, f2);

    const Vec2 x(0.75, 0.0);
    const Eigen::VectorXd u = evaluate_field(ctx, dens, x);
    double ferr = 0.0;
    for (int n = 0; n <= 10; ++n) ferr = std::max(ferr, std::abs(u(n) - fund->phi(n, x.norm())));

    const auto g = neumann_trace(ctx, stacks, dens);
    double terr = 0.0;
    for (int n = 0; n <= 10; ++n) {
        std::vector<double> gn(g[n].data(), g[n].data() + m_solve);
        const auto sub = trig_resample(gn, m_report);
        for (int j = 0; j < m_report; ++j) {
            const double s = 2.0 * M_PI * j / m_report;
            const Vec2 xb = ctx.curve(2).point(s);
            const double d = xb.norm();
            const double exact = -fund->phi_tilde(n, d) * outward_normal(ctx.curve(2), s).dot(xb) / d;
            terr = std::max(terr, std::abs(sub[j] - exact));
        }
    }
    return {ferr, terr};
}

void criterion_5() {
    // forward data path (inverse-crime guard doubles the solve grid)
    const auto e64 = manufactured_errors(forward_grid_for(64), 64);
    const auto e32 = manufactured_errors(forward_grid_for(32), 32);
    const bool tol = e64.field <= 1e-8 && e64.trace <= 1e-8;
    const bool ratio = e32.field >= 10.0 * e64.field && e32.trace >= 10.0 * e64.trace;
    report(5, tol && ratio, "forward simulation manufactured solution (example-1 geometry)",
           "field " + fmt(e64.field) + ", trace " + fmt(e64.trace) + " at M_total=64 (tol 1e-8); "
               + "32->64 ratios " + fmt(e32.field / e64.field) + "x/" + fmt(e32.trace / e64.trace)
               + "x (need >= 10x)");
    // raw solver grid without the guard, informational only: the printed
    // example-1 radial function limits a 64-node solve to ~1e-5
    const auto raw = manufactured_errors(64, 64);
    std::printf("       (info) raw 64-node solve without the guard: field %s, trace %s\n",
                fmt(raw.field).c_str(), fmt(raw.trace).c_str());
}

// ---- criterion 6 ------------------------------------------------------
void criterion_6() {
    const int M = 64, NT = 11, J = 13;
    auto outer = make_example_curve(ExampleCurve::unit_circle);
    const CauchyData data = simulate_paper(make_example_curve(ExampleCurve::rounded_rectangle),
                                           outer, M, 0.0, 0);
    auto fund = std::make_shared<FundamentalSequence>(LaguerreParams(1.0, 1.0, NT));

    TrigPolynomial base(J);
    base.coeffs[0] = 0.8;
    KernelContext ctx(fund, std::make_shared<RadialCurve>(
                                std::make_shared<TrigRadialProfile>(base), Vec2(0, 0), -1),
                      outer, QuadratureGrid(M));
    auto stacks = build_stacks(ctx);
    const auto dens = solve_field_and_data(ctx, stacks, data);
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    assemble_linearized_system(ctx, stacks, dens, data, J, A, b);

    auto predicted_with = [&](const TrigPolynomial& radial) {
        KernelContext c(fund, std::make_shared<RadialCurve>(
                                  std::make_shared<TrigRadialProfile>(radial), Vec2(0, 0), -1),
                        outer, QuadratureGrid(M));
        auto st = build_stacks(c);
        const auto tr = dirichlet_trace_outer(st, dens);
        Eigen::VectorXd stacked(NT * M);
        for (int n = 0; n < NT; ++n) stacked.segment(n * M, M) = tr[n];
        return stacked;
    };

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> pick(0, 2 * J);
    const double eps = 1e-5;
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        const int j = pick(rng);
        TrigPolynomial plus = base, minus = base;
        plus.coeffs[j] += eps;
        minus.coeffs[j] -= eps;
        const Eigen::VectorXd fd = (predicted_with(plus) - predicted_with(minus)) / (2.0 * eps);
        worst = std::max(worst, (fd + A.col(j)).lpNorm<Eigen::Infinity>());
    }
    report(6, worst <= 1e-4, "Frechet columns vs finite differences of the boundary map",
           "max column deviation " + fmt(worst) + ", tol 1e-4 (8 random directions)");
}

// ---- criterion 7 ------------------------------------------------------
void criterion_7() {
    auto outer = make_example_curve(ExampleCurve::unit_circle);
    const CauchyData data = simulate_paper(inner_circle(0.5), outer, 64, 0.0, 0);
    InverseConfig cfg;
    cfg.trig_degree = 13;
    cfg.reg_lambda_initial = 0.01;
    cfg.initial_radius = 0.5;
    cfg.max_iterations = 1;
    const auto res = reconstruct(cfg, data, outer, LaguerreParams(1.0, 1.0, 11));
    const double up = res.history.empty() ? 1e300 : res.history.front().update_norm;
    report(7, up <= 1e-5, "fixed point: iteration started at the true circle",
           "first update norm " + fmt(up) + ", tol 1e-5");
}

// ---- criteria 8 and 9 -------------------------------------------------
double max_radial_error(const TrigPolynomial& rec, const RadialCurve& truth) {
    double worst = 0.0;
    for (int i = 0; i < 720; ++i) {
        const double s = 2.0 * M_PI * i / 720;
        worst = std::max(worst, std::abs(rec.eval(s) - truth.radius(s)));
    }
    return worst;
}

void criterion_8() {
    auto inner = make_example_curve(ExampleCurve::rounded_rectangle);
    auto outer = make_example_curve(ExampleCurve::unit_circle);
    const auto* truth = dynamic_cast<const RadialCurve*>(inner.get());

    InverseConfig cfg;
    cfg.trig_degree = 13;
    cfg.reg_lambda_initial = 0.01;
    cfg.initial_radius = 0.8;
    cfg.max_iterations = 30;

    const CauchyData exact = simulate_paper(inner, outer, 64, 0.0, 7);
    const auto res = reconstruct(cfg, exact, outer, LaguerreParams(1.0, 1.0, 11));
    const double rerr = max_radial_error(res.radial, *truth);
    const bool exact_ok = rerr <= 0.05 && res.history.size() <= 30;

    const CauchyData noisy = simulate_paper(inner, outer, 64, 0.03, 7);
    InverseConfig ncfg = cfg;
    ncfg.noise_level = noisy.noise_level;
    const auto nres = reconstruct(ncfg, noisy, outer, LaguerreParams(1.0, 1.0, 11));
    RadialCurve nrec(std::make_shared<TrigRadialProfile>(nres.radial), Vec2(0, 0), -1);
    const double hd = hausdorff_distance(sample_curve(nrec, 512), sample_curve(*inner, 512));
    const bool noisy_ok = hd <= 0.12;

    report(8, exact_ok && noisy_ok, "example 1 end-to-end (r0=0.8, J=13, lambda0=0.01)",
           "exact: max radial err " + fmt(rerr) + " in " + std::to_string(res.history.size())
               + " iters (tol 0.05, cap 30); noisy 3% seed 7: hausdorff " + fmt(hd)
               + " (tol 0.12), status " + to_string(nres.status));
}

void criterion_9() {
    auto inner = make_example_curve(ExampleCurve::apple_inner);
    auto outer = make_example_curve(ExampleCurve::apple_outer);

    InverseConfig cfg;
    cfg.trig_degree = 5;
    cfg.reg_lambda_initial = 1e-3;
    cfg.initial_radius = 0.6;
    cfg.max_iterations = 20;

    const CauchyData exact = simulate_paper(inner, outer, 64, 0.0, 7);
    const auto res = reconstruct(cfg, exact, outer, LaguerreParams(1.0, 1.0, 11));
    RadialCurve rec(std::make_shared<TrigRadialProfile>(res.radial), Vec2(0, 0), -1);
    const double hd = hausdorff_distance(sample_curve(rec, 512), sample_curve(*inner, 512));
    const bool exact_ok = hd <= 0.08 && res.history.size() <= 20;

    const CauchyData noisy = simulate_paper(inner, outer, 64, 0.03, 7);
    InverseConfig ncfg = cfg;
    ncfg.noise_level = noisy.noise_level;
    const auto nres = reconstruct(ncfg, noisy, outer, LaguerreParams(1.0, 1.0, 11));
    RadialCurve nrec(std::make_shared<TrigRadialProfile>(nres.radial), Vec2(0, 0), -1);
    const double nhd = hausdorff_distance(sample_curve(nrec, 512), sample_curve(*inner, 512));
    const bool noisy_ok = nres.status == ReconstructionStatus::converged && nhd <= 0.15;

    report(9, exact_ok && noisy_ok, "example 2 end-to-end (r0=0.6, J=5, lambda0=0.001)",
           "exact: hausdorff " + fmt(hd) + " in " + std::to_string(res.history.size())
               + " iters (tol 0.08, cap 20); noisy: hausdorff " + fmt(nhd) + " (tol 0.15), status "
               + to_string(nres.status));
}

// ---- criterion 10 -----------------------------------------------------
void criterion_10() {
#ifdef CAVREC_CLI_PATH
    const fs::path cli = CAVREC_CLI_PATH;
    const fs::path dir = fs::temp_directory_path() / "cavrec_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto run = [&](const std::string& out) {
        std::ostringstream cmd;
        cmd << cli.string() << " simulate --example 2 -M 32 -N 6 --noise 0.03 --seed 7 --out "
            << (dir / out).string() << " > /dev/null";
        return std::system(cmd.str().c_str());
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    };
    const bool ran = run("a") == 0 && run("b") == 0;
    const std::string fa = slurp(dir / "a" / "cauchy_data.csv");
    const std::string fb = slurp(dir / "b" / "cauchy_data.csv");
    const bool pass = ran && !fa.empty() && fa == fb;
    report(10, pass, "determinism: identical CLI runs produce byte-identical CSV",
           ran ? (fa == fb ? "files identical, " + std::to_string(fa.size()) + " bytes"
                           : "files differ")
               : "CLI run failed");
#else
    report(10, false, "determinism", "CLI path not configured");
#endif
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures;
}
