#include <doctest.h>

#include <cmath>

#include "levystop/stopping.hpp"

using namespace levystop;

namespace {
LevyModel block_model(double alpha, double lam_over_minus_a) {
    LevyModel m;
    m.a = -1.0;
    m.lambda = lam_over_minus_a;
    m.alpha = alpha;
    return validate(m);
}
// the three parameter blocks of the reference table: (alpha, rho)
const std::pair<double, double> kBlocks[] = {{10.0, 1.0}, {10.0, 9.0}, {1.0, 0.5}};
}  // namespace

TEST_CASE("closed-form anchor: phi(1) = lambda/(-a alpha rho) in every block") {
    for (auto [alpha, rho] : kBlocks) {
        const auto m = block_model(alpha, alpha - rho);
        const double expected = m.lambda / (-m.a * alpha * rho);
        CHECK(solve_threshold(m, 1.0) == doctest::Approx(expected).epsilon(1e-11));
    }
}

TEST_CASE("reference thresholds: frozen 4-decimal table values") {
    struct Row {
        double alpha, rho, gamma, x_star, x_circ;  // x_circ < 0 means none
    };
    const Row rows[] = {
        {10, 1, 20, 19.8896, 18.8896},  {10, 1, 10, 9.8902, 8.8904},
        {10, 1, 5, 4.8915, 3.8921},     {10, 1, 2.5, 2.3939, 1.3968},
        {10, 1, 1, 0.9, -1},            {10, 9, 20, 1.7613, 1.6579},
        {10, 9, 10, 0.7511, 0.6547},    {10, 9, 5, 0.2881, 0.2045},
        {10, 9, 2.5, 0.0917, 0.0319},   {10, 9, 1, 0.0111, -1},
        {1, 0.5, 20, 38.1592, 36.166},  {1, 0.5, 10, 18.2726, 16.2942},
        {1, 0.5, 5, 8.4369, 6.5011},    {1, 0.5, 2.5, 3.6529, 1.8398},
        {1, 0.5, 1, 1.0, -1},
    };
    for (const auto& row : rows) {
        const auto sol = solve_power_problem(block_model(row.alpha, row.alpha - row.rho), row.gamma);
        CHECK(std::abs(sol.x_star - row.x_star) < 5e-4);
        if (row.x_circ >= 0.0) {
            REQUIRE(sol.x_circ.has_value());
            CHECK(std::abs(*sol.x_circ - row.x_circ) < 5e-4);
        } else {
            CHECK_FALSE(sol.x_circ.has_value());
        }
    }
}

TEST_CASE("threshold solutions satisfy the defining equations") {
    const auto m = block_model(10.0, 9.0);
    for (double gamma : {1.0, 2.5, 5.0, 10.0, 20.0}) {
        const auto sol = solve_power_problem(m, gamma);
        CHECK(std::abs(threshold_function(m, sol.x_star, gamma) - 1.0) < 1e-13);
        if (gamma > 1.0) {
            CHECK(std::abs(threshold_function(m, *sol.x_circ, gamma - 1.0) - 1.0) < 1e-13);
            // x_circ is the zero of the representing density (relative to the
            // local scale -a gamma x^{gamma-1}, which is enormous at gamma = 20)
            const double scale = gamma * std::pow(*sol.x_circ, gamma - 1.0);
            CHECK(std::abs(representing_density(m, gamma, *sol.x_circ)) < 1e-11 * scale);
        }
    }
}

TEST_CASE("phi is increasing with phi(1) <= phi(u) < u/rho") {
    const auto m = block_model(10.0, 9.0);
    const double phi1 = solve_threshold(m, 1.0);
    double prev = 0.0;
    for (double u = 1.0; u <= 20.0; u += 0.5) {
        const double cur = solve_threshold(m, u);
        CHECK(cur > prev);
        CHECK(cur >= phi1 - 1e-12);
        CHECK(cur < u / 1.0);  // rho = 1 in this block
        prev = cur;
    }
}

TEST_CASE("near-deterministic regime rho << alpha: x* approaches gamma/rho") {
    const auto m = block_model(10.0, 9.0);  // rho = 1
    for (double gamma : {5.0, 10.0, 20.0}) {
        const auto sol = solve_power_problem(m, gamma);
        CHECK(std::abs(sol.x_star - gamma / sol.rho) < 0.12);
    }
}

TEST_CASE("solve_threshold edge cases") {
    const auto m = block_model(10.0, 9.0);
    CHECK_THROWS_AS(solve_threshold(m, 0.0), NoRoot);
    // u in (0, 1) still has a root: F decreases from +inf through 1
    const double x = solve_threshold(m, 0.5);
    CHECK(std::abs(threshold_function(m, x, 0.5) - 1.0) < 1e-12);
    // non-qualifying model
    LevyModel bad = m;
    bad.a = 1.0;
    CHECK_THROWS_AS(solve_threshold(validate(bad), 2.0), DriftNotNegative);
}

TEST_CASE("value function: boundary value, continuity, exponential left tail") {
    const auto m = block_model(10.0, 9.0);
    const auto sol = solve_power_problem(m, 2.5);
    const double xs = sol.x_star;
    CHECK(sol.value(xs) == doctest::Approx(std::pow(xs, 2.5)));
    CHECK(sol.value(xs - 1e-9) == doctest::Approx(sol.value(xs + 1e-9)).epsilon(1e-7));
    CHECK(sol.value(xs - 1.0) == doctest::Approx(std::exp(-1.0) * std::pow(xs, 2.5)));
    // reference-point spot check against the frozen table threshold
    CHECK(sol.value(2.3939 - 1.0) ==
          doctest::Approx(std::exp(-1.0) * std::pow(2.3939, 2.5)).epsilon(1e-3));
}

TEST_CASE("value majorizes the reward strictly below the threshold") {
    const auto m = block_model(10.0, 9.0);
    for (double gamma : {2.5, 5.0}) {
        const auto sol = solve_power_problem(m, gamma);
        for (int i = 1; i < 40; ++i) {
            const double x = sol.x_star * i / 40.0;
            CHECK(sol.value(x) - sol.reward(x) > 0.0);
        }
    }
}

TEST_CASE("no smooth fit: the derivative gap at x* is positive for gamma > 1") {
    for (auto [alpha, rho] : kBlocks) {
        const auto m = block_model(alpha, alpha - rho);
        for (double gamma : {2.5, 5.0, 10.0, 20.0}) {
            const auto sol = solve_power_problem(m, gamma);
            CHECK(sol.smooth_fit_gap() > 1e-6);
            // left derivative by finite differences equals rho * x*^gamma
            const double h = 1e-7;
            const double dl = (sol.value(sol.x_star - h) - sol.value(sol.x_star - 2 * h)) / h;
            CHECK(dl == doctest::Approx(sol.rho * std::pow(sol.x_star, gamma)).epsilon(1e-4));
        }
    }
}

TEST_CASE("scale invariance: rescaling a and lambda jointly leaves thresholds unchanged") {
    LevyModel scaled;
    scaled.a = -2.0;
    scaled.lambda = 18.0;
    scaled.alpha = 10.0;
    const auto sol1 = solve_power_problem(block_model(10.0, 9.0), 2.5);
    const auto sol2 = solve_power_problem(validate(scaled), 2.5);
    CHECK(sol1.x_star == doctest::Approx(sol2.x_star).epsilon(1e-13));
    CHECK(*sol1.x_circ == doctest::Approx(*sol2.x_circ).epsilon(1e-13));
    for (double x : {0.5, 1.0, 2.0})
        CHECK(threshold_function(block_model(10.0, 9.0), x, 2.5) ==
              doctest::Approx(threshold_function(scaled, x, 2.5)).epsilon(1e-14));
}

TEST_CASE("gamma below one is rejected") {
    CHECK_THROWS_AS(solve_power_problem(block_model(10.0, 9.0), 0.5), DomainError);
}
