// Command-line front end: root finding, Green kernels, Wiener-Hopf factors,
// threshold solving, table generation, Monte Carlo and the invariant suite.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levystop/model.hpp"
#include "levystop/model_json.hpp"
#include "levystop/simulate.hpp"
#include "levystop/spectral.hpp"
#include "levystop/stopping.hpp"
#include "levystop/wiener_hopf.hpp"

using nlohmann::json;
using namespace levystop;

namespace {

struct GridSpec {
    double lo, hi;
    int n;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char colon1, colon2;
    std::istringstream in(text);
    if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.n) || colon1 != ':' || colon2 != ':' ||
        g.n < 2 || !(g.hi > g.lo))
        throw InvalidParameter("grid must be lo:hi:n with hi > lo and n >= 2");
    return g;
}

json roots_to_json(const RootSet& rs) {
    json arr = json::array();
    for (const auto& rt : rs.roots)
        arr.push_back({{"rho", rt.rho}, {"psi_prime", rt.slope}, {"A", rt.coeff}});
    return {{"r", rs.r}, {"roots", arr}};
}

json kernel_to_json(const ExpMixtureKernel& k) {
    auto side = [](const std::vector<ExpTerm>& terms) {
        json arr = json::array();
        for (const auto& t : terms) arr.push_back({{"coeff", t.coeff}, {"rate", t.rate}});
        return arr;
    };
    return {{"r", k.r},
            {"negative_side", side(k.negative_side)},
            {"positive_side", side(k.positive_side)},
            {"value_at_zero", k.value_at_zero}};
}

json law_to_json(const HalfLineLaw& law) {
    json mix = json::array();
    for (const auto& c : law.components) mix.push_back({{"w", c.weight}, {"rate", c.rate}});
    return {{"atom", law.atom}, {"mixture", mix}};
}

struct TableRow {
    double alpha, rho, lam_over_minus_a, gamma;
};

// The built-in fixture: three parameter blocks, five exponents each.
// Thresholds depend only on (alpha, lambda/(-a)), so a = -1 is used to
// realize each row.
std::vector<TableRow> builtin_table() {
    std::vector<TableRow> rows;
    const double gammas[] = {20.0, 10.0, 5.0, 2.5, 1.0};
    const std::pair<double, double> blocks[] = {{10.0, 1.0}, {10.0, 9.0}, {1.0, 0.5}};
    for (auto [alpha, rho] : blocks)
        for (double g : gammas) rows.push_back({alpha, rho, alpha - rho, g});
    return rows;
}

LevyModel model_for_row(const TableRow& row) {
    LevyModel m;
    m.a = -1.0;
    m.lambda = row.lam_over_minus_a;
    m.alpha = row.alpha;
    return validate(m);
}

void print_table(const std::vector<TableRow>& rows) {
    std::printf("alpha,rho,lambda_over_minus_a,gamma,gamma_over_rho,x_star,x_circ\n");
    for (const auto& row : rows) {
        const auto sol = solve_power_problem(model_for_row(row), row.gamma);
        std::printf("%g,%g,%g,%g,%.6f,%.6f,", row.alpha, row.rho, row.lam_over_minus_a,
                    row.gamma, row.gamma / row.rho, sol.x_star);
        if (sol.x_circ)
            std::printf("%.6f\n", *sol.x_circ);
        else
            std::printf("\n");
    }
}

int run_verify(const LevyModel& m, std::uint64_t /*seed*/) {
    int failures = 0;
    auto check = [&](bool ok, const std::string& name, double detail) {
        std::printf("%s  %s (%.3g)\n", ok ? "ok  " : "FAIL", name.c_str(), detail);
        if (!ok) ++failures;
    };

    // exponent basics
    check(exponent(m, 0.0) == 0.0, "psi(0) = 0", exponent(m, 0.0));
    {
        const double zlo = m.has_down_jumps() ? -0.9 * m.beta : -1.0;
        const double zhi = m.has_up_jumps() ? 0.9 * m.alpha : 1.0;
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double z = zlo + (zhi - zlo) * i / 100.0;
            const double h = 1e-6;
            const double fd = (exponent(m, z + h) - exponent(m, z - h)) / (2.0 * h);
            const double an = exponent_prime(m, z);
            worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
        }
        check(worst < 1e-6, "psi' matches central differences", worst);
        if (m.b > 0.0 || (m.has_up_jumps() && m.has_down_jumps())) {
            double wmin = std::numeric_limits<double>::infinity();
            for (int i = 1; i < 100; ++i)
                wmin = std::min(wmin, exponent_second(m, zlo + (zhi - zlo) * i / 100.0));
            check(wmin > 0.0, "psi strictly convex on the strip", wmin);
        }
    }

    for (double r : {0.1, 0.5, 2.0}) {
        const auto tag = [&](const char* s) { return std::string(s) + " @ r=" + std::to_string(r); };
        const RootSet rs = exponent_roots(m, r);
        double worst = 0.0;
        for (const auto& rt : rs.roots) worst = std::max(worst, std::abs(exponent(m, rt.rho) - r));
        check(worst <= 1e-10 * std::max(1.0, r), tag("roots satisfy psi(rho) = r"), worst);

        // partial fraction identity on the inner strip
        const auto neg = rs.negative_roots();
        const auto pos = rs.positive_roots();
        const double lo = neg.empty() ? -1.0 : neg.back();
        const double hi = pos.empty() ? 1.0 : pos.front();
        double pf = 0.0;
        for (int i = 1; i < 50; ++i) {
            const double z = lo + (hi - lo) * i / 50.0;
            pf = std::max(pf, std::abs((r - exponent(m, z)) * partial_fraction_sum(rs, z) - 1.0));
        }
        check(pf < 1e-9, tag("partial fraction identity"), pf);

        const ExpMixtureKernel k = green_kernel(m, r);
        check(std::abs(r * k.total_mass() - 1.0) < 1e-10, tag("kernel normalization"),
              std::abs(r * k.total_mass() - 1.0));
        if (m.b > 0.0) {
            double s = 0.0;
            for (const auto& rt : rs.roots) s += rt.coeff;
            check(std::abs(s) < 1e-10, tag("continuity: sum 1/psi' = 0"), s);
        } else if (!m.has_down_jumps() && m.has_up_jumps() && rs.count() == 2) {
            const double s = rs[0].coeff + rs[1].coeff - 1.0 / m.a;
            check(std::abs(s) < 1e-10, tag("discontinuity: sum 1/psi' = 1/a"), s);
        }
        double dmin = std::numeric_limits<double>::infinity();
        for (int i = -50; i <= 50; ++i) dmin = std::min(dmin, k.density(0.1 * i));
        check(dmin >= 0.0, tag("kernel density nonnegative"), dmin);

        const double res = factorization_residual(m, r, 100);
        check(res < 1e-9, tag("factorization residual"), res);
    }

    // the undiscounted one-sided problem, when this model supports it
    bool power_config = true;
    try {
        power_problem_rho(m);
    } catch (const DriftNotNegative&) {
        power_config = false;
    }
    if (power_config) {
        const double gamma = 2.5;
        const auto sol = solve_power_problem(m, gamma);
        check(std::abs(threshold_function(m, sol.x_star, gamma) - 1.0) < 1e-12,
              "threshold equation F(x*, gamma) = 1",
              std::abs(threshold_function(m, sol.x_star, gamma) - 1.0));
        check(sol.x_circ && *sol.x_circ < sol.x_star && sol.x_star < gamma / sol.rho,
              "x_circ < x_star < gamma/rho", sol.x_star);

        const ExpMixtureKernel k0 = green_kernel(m, 0.0);
        const SpectralDensity sig = power_reward_sigma(m, gamma, sol.x_star);
        double vgap = 0.0;
        for (double x : {0.5 * sol.x_star, sol.x_star, 1.5 * sol.x_star})
            vgap = std::max(vgap, std::abs(value_via_kernel(k0, sig, x) - sol.value(x)));
        check(vgap < 1e-6, "kernel representation reproduces the value function", vgap);

        std::vector<double> grid;
        for (int i = 0; i <= 60; ++i)
            grid.push_back(sol.x_star - 20.0 / sol.rho + i * (20.0 / sol.rho + 5.0) / 60.0);
        const auto rep = verify_theorem_conditions(
            k0, sig, [&](double x) { return sol.reward(x); }, sol.x_star, grid);
        check(rep.pass(), "value function conditions (a)-(d)", rep.max_reward_gap);

        const RootSet rs0 = exponent_roots(m, 0.0);
        const double xprobe = 0.5 * sol.x_star;
        const double r1 = ode_residual(rs0, sig, [&](long double x) { return sol.value_ld(x); },
                                       xprobe, 1e-4);
        const double r2 = ode_residual(rs0, sig, [&](long double x) { return sol.value_ld(x); },
                                       xprobe, 5e-5);
        check(r2 > 0.0 && r1 / r2 > 3.0, "ODE residual O(h^2) decay", r1 / r2);

        const double cands[] = {sol.x_star, sol.x_star + 0.5};
        const auto resid = uniqueness_scan(k0, m, gamma, cands);
        check(std::abs(resid[0]) < 1e-8 && std::abs(resid[1]) > 1e-4,
              "threshold uniqueness scan", resid[1]);
    }

    std::printf("%s (%d failure%s)\n", failures == 0 ? "VERIFY PASS" : "VERIFY FAIL", failures,
                failures == 1 ? "" : "s");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal stopping toolkit for jump diffusions with rational exponents"};
    app.require_subcommand(1);

    std::string model_path, grid_text, spec_path, mode = "triple", format = "json";
    double r = 0.5, gamma = 1.0, threshold = 0.0, x0 = 0.0;
    std::size_t nsamples = 100000;
    std::uint64_t seed = 1;
    bool paper_fixture = false;

    auto* roots_cmd = app.add_subcommand("roots", "real roots of psi(z) = r");
    roots_cmd->add_option("--model", model_path, "model JSON path")->required();
    roots_cmd->add_option("--r", r, "discount rate")->required();

    auto* kernel_cmd = app.add_subcommand("kernel", "Green kernel as exponential mixtures");
    kernel_cmd->add_option("--model", model_path)->required();
    kernel_cmd->add_option("--r", r)->required();
    kernel_cmd->add_option("--grid", grid_text, "emit CSV x,density over lo:hi:n");

    auto* factors_cmd = app.add_subcommand("factors", "killed supremum/infimum laws");
    factors_cmd->add_option("--model", model_path)->required();
    factors_cmd->add_option("--r", r)->required();

    auto* solve_cmd = app.add_subcommand("solve", "power-reward thresholds");
    solve_cmd->add_option("--model", model_path)->required();
    solve_cmd->add_option("--gamma", gamma)->required();

    auto* table_cmd = app.add_subcommand("table", "threshold table over parameter rows");
    table_cmd->add_flag("--paper", paper_fixture, "use the built-in 15-row fixture");
    table_cmd->add_option("--spec", spec_path, "JSON array of rows");

    auto* value_cmd = app.add_subcommand("value", "value function on a grid (CSV x,V,g)");
    value_cmd->add_option("--model", model_path)->required();
    value_cmd->add_option("--gamma", gamma)->required();
    value_cmd->add_option("--grid", grid_text)->required();

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo sampling");
    sim_cmd->add_option("--model", model_path)->required();
    sim_cmd->add_option("--mode", mode)->check(CLI::IsMember({"triple", "policy"}));
    sim_cmd->add_option("--r", r);
    sim_cmd->add_option("--n", nsamples);
    sim_cmd->add_option("--seed", seed);
    sim_cmd->add_option("--gamma", gamma);
    sim_cmd->add_option("--threshold", threshold);
    sim_cmd->add_option("--x0", x0);

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    verify_cmd->add_option("--model", model_path)->required();
    verify_cmd->add_option("--seed", seed);

    app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*roots_cmd) {
            const auto m = model_from_json_file(model_path);
            std::printf("%s\n", roots_to_json(exponent_roots(m, r)).dump(2).c_str());
        } else if (*kernel_cmd) {
            const auto m = model_from_json_file(model_path);
            const auto k = green_kernel(m, r);
            if (!grid_text.empty()) {
                const GridSpec g = parse_grid(grid_text);
                std::printf("x,density\n");
                for (int i = 0; i < g.n; ++i) {
                    const double x = g.lo + (g.hi - g.lo) * i / (g.n - 1.0);
                    std::printf("%.10g,%.10g\n", x, k.density(x));
                }
            } else {
                std::printf("%s\n", kernel_to_json(k).dump(2).c_str());
            }
        } else if (*factors_cmd) {
            const auto m = model_from_json_file(model_path);
            const auto f = wh_factors(m, r);
            json out = {{"r", r},
                        {"supremum", law_to_json(f.supremum)},
                        {"infimum", law_to_json(f.infimum)},
                        {"residual", factorization_residual(m, r, 100)}};
            std::printf("%s\n", out.dump(2).c_str());
        } else if (*solve_cmd) {
            const auto m = model_from_json_file(model_path);
            const auto sol = solve_power_problem(m, gamma);
            json out = {{"gamma", sol.gamma},
                        {"rho", sol.rho},
                        {"x_star", sol.x_star},
                        {"x_circ", sol.x_circ ? json(*sol.x_circ) : json(nullptr)},
                        {"gamma_over_rho", sol.gamma / sol.rho},
                        {"no_smooth_fit_gap", sol.smooth_fit_gap()}};
            std::printf("%s\n", out.dump(2).c_str());
        } else if (*table_cmd) {
            std::vector<TableRow> rows;
            if (paper_fixture) {
                rows = builtin_table();
            } else if (!spec_path.empty()) {
                std::ifstream in(spec_path);
                if (!in) throw InvalidParameter("cannot open table spec: " + spec_path);
                json j = json::parse(in);
                for (const auto& e : j) {
                    TableRow row{};
                    row.alpha = e.at("alpha").get<double>();
                    if (e.contains("rho")) {
                        row.rho = e.at("rho").get<double>();
                        row.lam_over_minus_a = row.alpha - row.rho;
                    } else {
                        row.lam_over_minus_a = e.at("lambda_over_minus_a").get<double>();
                        row.rho = row.alpha - row.lam_over_minus_a;
                    }
                    row.gamma = e.at("gamma").get<double>();
                    rows.push_back(row);
                }
            } else {
                throw InvalidParameter("table requires --paper or --spec");
            }
            print_table(rows);
        } else if (*value_cmd) {
            const auto m = model_from_json_file(model_path);
            const auto sol = solve_power_problem(m, gamma);
            const GridSpec g = parse_grid(grid_text);
            std::printf("x,V,g\n");
            for (int i = 0; i < g.n; ++i) {
                const double x = g.lo + (g.hi - g.lo) * i / (g.n - 1.0);
                std::printf("%.10g,%.10g,%.10g\n", x, sol.value(x), sol.reward(x));
            }
        } else if (*sim_cmd) {
            const auto m = model_from_json_file(model_path);
            MCEstimate est;
            if (mode == "policy") {
                est = estimate_policy_value(m, gamma, threshold, x0, nsamples, seed);
            } else {
                const auto triples = sample_triples(m, r, nsamples, seed);
                est.n = triples.size();
                est.seed = seed;
                double s = 0, s2 = 0;
                for (const auto& t : triples) {
                    s += t.terminal;
                    s2 += t.terminal * t.terminal;
                }
                est.mean = s / est.n;
                est.std_error =
                    std::sqrt(std::max(0.0, s2 / est.n - est.mean * est.mean) / (est.n - 1.0));
                est.bias_bound = m.b > 0.0 ? 0.583 * m.b * std::sqrt(1e-3 / r) : 0.0;
            }
            json out = {{"mean", est.mean},
                        {"stderr", est.std_error},
                        {"n", est.n},
                        {"seed", est.seed},
                        {"bias_bound", est.bias_bound}};
            std::printf("%s\n", out.dump(2).c_str());
        } else if (*verify_cmd) {
            const auto m = model_from_json_file(model_path);
            return run_verify(m, seed);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
