#include "levystop/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levystop/quadrature.hpp"
#include "levystop/special_functions.hpp"

namespace levystop {

namespace {

struct PowerParams {
    double alpha;
    double lam_over_minus_a;
    double rho;
};

PowerParams power_params(const LevyModel& m) {
    const double rho = power_problem_rho(m);
    return {m.alpha, m.lambda / (-m.a), rho};
}

template <std::floating_point Real>
Real f_threshold(Real alpha, Real lma, Real x, Real u) {
    if (!(x > 0)) throw DomainError("threshold function requires x > 0");
    if (!(u >= 0)) throw DomainError("threshold function requires u >= 0");
    const Real c = lma / alpha;
    if (u == 0) return c;
    const Real s = alpha * x;
    return c * s * upper_gamma_scaled<Real>(u + 1, s);
}

template <std::floating_point Real>
Real f_threshold_dx(Real alpha, Real lma, Real x, Real u) {
    const Real f = f_threshold(alpha, lma, x, u);
    const Real c = lma / alpha;
    return alpha * ((1 - u / (alpha * x)) * f - c);
}

template <std::floating_point Real>
Real sigma_density(Real alpha, Real lma, Real minus_a, Real gamma, Real x) {
    const Real f = f_threshold(alpha, lma, x, gamma - 1);
    return minus_a * gamma * std::pow(x, gamma - 1) * (1 - f);
}

template <std::floating_point Real>
Real sigma_density_prime(Real alpha, Real lma, Real minus_a, Real gamma, Real x) {
    const Real f = f_threshold(alpha, lma, x, gamma - 1);
    const Real fx = f_threshold_dx(alpha, lma, x, gamma - 1);
    return minus_a * gamma *
           ((gamma - 1) * std::pow(x, gamma - 2) * (1 - f) - std::pow(x, gamma - 1) * fx);
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

double threshold_function(const LevyModel& m, double x, double u) {
    const auto p = power_params(m);
    return f_threshold<double>(p.alpha, p.lam_over_minus_a, x, u);
}

double threshold_function_dx(const LevyModel& m, double x, double u) {
    const auto p = power_params(m);
    return f_threshold_dx<double>(p.alpha, p.lam_over_minus_a, x, u);
}

double representing_density(const LevyModel& m, double gamma, double x) {
    const auto p = power_params(m);
    return sigma_density<double>(p.alpha, p.lam_over_minus_a, -m.a, gamma, x);
}

double representing_density_prime(const LevyModel& m, double gamma, double x) {
    const auto p = power_params(m);
    return sigma_density_prime<double>(p.alpha, p.lam_over_minus_a, -m.a, gamma, x);
}

double solve_threshold(const LevyModel& m, double u) {
    const auto p = power_params(m);
    if (!(u >= 0)) throw DomainError("solve_threshold requires u >= 0");
    if (u == 0.0) throw NoRoot("F(., 0) is constant below 1; no threshold exists");

    auto F = [&](double x) { return f_threshold<double>(p.alpha, p.lam_over_minus_a, x, u); };
    auto Fx = [&](double x) { return f_threshold_dx<double>(p.alpha, p.lam_over_minus_a, x, u); };

    // bracket the root: F decreases from +inf to lam/(-a alpha) < 1
    double hi = std::max(u, 1.0) / p.rho;
    for (int i = 0; i < 200 && F(hi) >= 1.0; ++i) hi *= 2.0;
    double lo = 0.5 * hi;
    for (int i = 0; i < 2000 && F(lo) < 1.0; ++i) lo *= 0.5;
    if (!(F(lo) >= 1.0 && F(hi) < 1.0))
        throw NonConvergence("failed to bracket the threshold equation");

    double x = std::min(u / p.rho, hi);  // classic starting guess
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    double f = F(x) - 1.0;
    for (int i = 0; i < 100; ++i) {
        if (std::abs(f) <= 8e-15) break;
        if (f > 0.0)
            lo = x;
        else
            hi = x;
        double xn = x - f / Fx(x);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (xn == x) break;
        x = xn;
        f = F(x) - 1.0;
    }
    if (std::abs(f) > 1e-12) throw NonConvergence("threshold Newton iteration stalled");
    return x;
}

double ThresholdSolution::value(double x) const {
    if (x >= x_star) return std::pow(x, gamma);
    return std::exp(rho * (x - x_star)) * std::pow(x_star, gamma);
}

long double ThresholdSolution::value_ld(long double x) const {
    const long double xs = x_star;
    const long double g = gamma;
    if (x >= xs) return std::pow(x, g);
    return std::exp(static_cast<long double>(rho) * (x - xs)) * std::pow(xs, g);
}

double ThresholdSolution::reward(double x) const {
    return x <= 0.0 ? 0.0 : std::pow(x, gamma);
}

double ThresholdSolution::smooth_fit_gap() const {
    return std::abs(rho * std::pow(x_star, gamma) - gamma * std::pow(x_star, gamma - 1.0));
}

ThresholdSolution solve_power_problem(const LevyModel& m, double gamma) {
    if (!(gamma >= 1.0)) throw DomainError("power reward requires gamma >= 1");
    const auto p = power_params(m);

    ThresholdSolution sol;
    sol.gamma = gamma;
    sol.model = m;
    sol.rho = p.rho;
    sol.x_star = solve_threshold(m, gamma);
    if (gamma > 1.0) sol.x_circ = solve_threshold(m, gamma - 1.0);

    if (!(sol.x_star < gamma / p.rho))
        throw NonConvergence("threshold violates x* < gamma/rho");
    if (sol.x_circ && !(*sol.x_circ < sol.x_star))
        throw NonConvergence("threshold ordering x_circ < x_star violated");
    return sol;
}

SpectralDensity power_reward_sigma(const LevyModel& m, double gamma, double threshold) {
    SpectralDensity s;
    s.right_start = threshold;
    s.density = [m, gamma](double y) { return representing_density(m, gamma, y); };
    s.density_prime = [m, gamma](double y) { return representing_density_prime(m, gamma, y); };
    return s;
}

double value_via_kernel(const ExpMixtureKernel& kernel, const SpectralDensity& sigma, double x,
                        double abs_tol) {
    auto f = [&](double y) { return kernel.density(y - x) * sigma.density(y); };
    const int npieces = sigma.left_end ? 2 : 1;
    const double piece_tol = abs_tol / npieces;
    double total = 0.0;

    {  // [right_start, inf)
        std::vector<double> splits{sigma.right_start};
        for (double b : sigma.breakpoints)
            if (b > sigma.right_start) splits.push_back(b);
        if (x > sigma.right_start) splits.push_back(x);
        splits = sorted_unique(std::move(splits));

        const double part_tol = piece_tol / static_cast<double>(splits.size());
        for (std::size_t i = 0; i + 1 < splits.size(); ++i)
            total += integrate(f, splits[i], splits[i + 1], {part_tol});
        if (!kernel.positive_side.empty())
            total += integrate_right_tail(f, splits.back(), kernel.min_positive_rate(),
                                          {part_tol});
    }

    if (sigma.left_end) {  // (-inf, left_end]
        std::vector<double> splits{*sigma.left_end};
        for (double b : sigma.breakpoints)
            if (b < *sigma.left_end) splits.push_back(b);
        if (x < *sigma.left_end) splits.push_back(x);
        splits = sorted_unique(std::move(splits));

        const double part_tol = piece_tol / static_cast<double>(splits.size());
        for (std::size_t i = 0; i + 1 < splits.size(); ++i)
            total += integrate(f, splits[i], splits[i + 1], {part_tol});
        if (!kernel.negative_side.empty()) {
            const double rate = kernel.min_negative_rate_abs();
            if (!(rate > 0.0))
                throw QuadratureNonConvergence(
                    "kernel has a non-decaying branch on the negative side");
            total += integrate_left_tail(f, splits.front(), rate, {part_tol});
        }
    }
    return total;
}

ConditionsReport verify_theorem_conditions(const ExpMixtureKernel& kernel,
                                           const SpectralDensity& sigma,
                                           const std::function<double(double)>& reward,
                                           double x_star, std::span<const double> grid) {
    ConditionsReport rep;
    const double scale = std::max(1.0, std::abs(reward(x_star)));

    // (a) continuity across the threshold
    const double delta = 1e-5 * std::max(1.0, std::abs(x_star));
    const double vl = value_via_kernel(kernel, sigma, x_star - delta);
    const double vr = value_via_kernel(kernel, sigma, x_star + delta);
    rep.continuity_gap = std::abs(vl - vr);
    rep.continuous = rep.continuity_gap <= 1e-3 * scale;

    std::vector<double> below, above;
    for (double g : grid) (g < x_star ? below : above).push_back(g);
    std::sort(below.begin(), below.end());
    std::sort(above.begin(), above.end());

    // (b) decay along the left tail
    if (below.size() >= 2) {
        const double v0 = value_via_kernel(kernel, sigma, below[0]);
        const double v1 = value_via_kernel(kernel, sigma, below[1]);
        rep.decays_left = v0 <= 1e-3 * scale && v0 <= v1 + 1e-9 * scale;
    }

    // (c) V = g on [x_star, inf)
    rep.equals_reward_above = true;
    for (double gpt : above) {
        const double gap = std::abs(value_via_kernel(kernel, sigma, gpt) - reward(gpt));
        rep.max_reward_gap = std::max(rep.max_reward_gap, gap);
        if (gap > 1e-6) rep.equals_reward_above = false;
    }

    // (d) V >= g below
    rep.majorizes_below = true;
    rep.worst_majorant_gap = std::numeric_limits<double>::infinity();
    for (double gpt : below) {
        const double d = value_via_kernel(kernel, sigma, gpt) - reward(gpt);
        rep.worst_majorant_gap = std::min(rep.worst_majorant_gap, d);
        if (d < -1e-9) rep.majorizes_below = false;
    }
    return rep;
}

std::vector<double> uniqueness_scan(const ExpMixtureKernel& kernel, const LevyModel& m,
                                    double gamma, std::span<const double> candidates) {
    std::vector<double> residuals;
    residuals.reserve(candidates.size());
    for (double x : candidates) {
        const SpectralDensity sig = power_reward_sigma(m, gamma, x);
        const double g = std::pow(x, gamma);
        residuals.push_back(g - value_via_kernel(kernel, sig, x, 1e-9));
    }
    return residuals;
}

double ode_residual(const RootSet& roots, const SpectralDensity& sigma,
                    const std::function<long double(long double)>& value, double x, double h) {
    if (roots.count() != 2)
        throw InvalidParameter("ode_residual requires a two-root kernel");
    if (!(h > 0.0)) throw StepTooLarge("step must be positive");
    if (h >= std::abs(x - sigma.right_start))
        throw StepTooLarge("stencil straddles the support edge");

    const long double xl = x;
    const long double hl = h;
    const long double vp = value(xl + hl);
    const long double vm = value(xl - hl);
    const long double v0 = value(xl);
    const long double d1 = (vp - vm) / (2 * hl);
    const long double d2 = (vp - 2 * v0 + vm) / (hl * hl);

    const long double rho1 = roots[0].rho, rho2 = roots[1].rho;
    const long double a1 = roots[0].coeff, a2 = roots[1].coeff;
    const long double lhs = d2 - (rho1 + rho2) * d1 + rho1 * rho2 * v0;

    long double sp = 0, spp = 0;
    if (x > sigma.right_start) {
        sp = sigma.density(x);
        if (sigma.density_prime) {
            spp = sigma.density_prime(x);
        } else {
            spp = (sigma.density(x + h) - sigma.density(x - h)) / (2.0 * h);
        }
    }
    const long double rhs = -(a1 + a2) * spp + (rho2 * a1 + rho1 * a2) * sp;
    return static_cast<double>(std::abs(lhs - rhs));
}

double q_upper(const WhFactors& f, const SpectralDensity& sigma, double z, double abs_tol) {
    if (z < sigma.right_start) return 0.0;
    double val = f.infimum.atom * sigma.density_at(z);
    if (z > sigma.right_start && !f.infimum.components.empty()) {
        std::vector<double> splits{sigma.right_start, z};
        for (double b : sigma.breakpoints)
            if (b > sigma.right_start && b < z) splits.push_back(b);
        splits = sorted_unique(std::move(splits));
        auto g = [&](double y) { return f.infimum.density(y - z) * sigma.density(y); };
        const double part_tol = abs_tol * f.r / static_cast<double>(splits.size());
        for (std::size_t i = 0; i + 1 < splits.size(); ++i)
            val += integrate(g, splits[i], splits[i + 1], {part_tol});
    }
    return val / f.r;
}

double q_lower(const WhFactors& f, const SpectralDensity& sigma, double z, double abs_tol) {
    if (!sigma.left_end) throw DomainError("q_lower requires a two-sided support");
    if (z > *sigma.left_end) return 0.0;
    double val = f.supremum.atom * sigma.density_at(z);
    if (z < *sigma.left_end && !f.supremum.components.empty()) {
        std::vector<double> splits{z, *sigma.left_end};
        for (double b : sigma.breakpoints)
            if (b > z && b < *sigma.left_end) splits.push_back(b);
        splits = sorted_unique(std::move(splits));
        auto g = [&](double y) { return f.supremum.density(y - z) * sigma.density(y); };
        const double part_tol = abs_tol * f.r / static_cast<double>(splits.size());
        for (std::size_t i = 0; i + 1 < splits.size(); ++i)
            val += integrate(g, splits[i], splits[i + 1], {part_tol});
    }
    return val / f.r;
}

double value_via_maximum(const WhFactors& f, const SpectralDensity& sigma, double x,
                         double abs_tol) {
    if (x > sigma.right_start)
        throw DomainError("maximum representation is valid up to the right support edge");
    if (sigma.left_end && x < *sigma.left_end)
        throw DomainError("two-sided representation is valid between the support edges");
    const int npieces = sigma.left_end ? 2 : 1;
    const double piece_tol = abs_tol / npieces;
    double total = 0.0;

    {  // supremum part: E_x[Q(M); M >= x*]
        double lower = sigma.right_start - x;
        const double inner_tol = 0.25 * piece_tol;
        if (lower <= 0.0) {
            total += f.supremum.atom * q_upper(f, sigma, x, inner_tol);
            lower = 0.0;
        }
        if (!f.supremum.components.empty()) {
            std::vector<double> splits{lower};
            for (double b : sigma.breakpoints)
                if (b - x > lower) splits.push_back(b - x);
            splits = sorted_unique(std::move(splits));
            auto g = [&](double t) {
                return f.supremum.density(t) * q_upper(f, sigma, x + t, inner_tol);
            };
            const double part_tol = 0.5 * piece_tol / static_cast<double>(splits.size());
            for (std::size_t i = 0; i + 1 < splits.size(); ++i)
                total += integrate(g, splits[i], splits[i + 1], {part_tol});
            total += integrate_right_tail(g, splits.back(), f.supremum.min_rate(), {part_tol});
        }
    }

    if (sigma.left_end) {  // infimum part: E_x[Q_*(I); I <= x_*]
        double upper = *sigma.left_end - x;
        const double inner_tol = 0.25 * piece_tol;
        if (upper >= 0.0) {
            total += f.infimum.atom * q_lower(f, sigma, x, inner_tol);
            upper = 0.0;
        }
        if (!f.infimum.components.empty()) {
            std::vector<double> splits{upper};
            for (double b : sigma.breakpoints)
                if (b - x < upper) splits.push_back(b - x);
            splits = sorted_unique(std::move(splits));
            auto g = [&](double s) {
                return f.infimum.density(s) * q_lower(f, sigma, x + s, inner_tol);
            };
            const double part_tol = 0.5 * piece_tol / static_cast<double>(splits.size());
            for (std::size_t i = 0; i + 1 < splits.size(); ++i)
                total += integrate(g, splits[i], splits[i + 1], {part_tol});
            total += integrate_left_tail(g, splits.front(), f.infimum.min_rate(), {part_tol});
        }
    }
    return total;
}

}  // namespace levystop
