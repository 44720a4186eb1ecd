#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "levystop/model.hpp"
#include "levystop/spectral.hpp"
#include "levystop/wiener_hopf.hpp"

namespace levystop {

/// Density sigma' of the representing measure of a candidate value function,
/// supported on [right_start, inf) and optionally also on (-inf, *left_end].
/// `density_prime` (sigma'') may be empty; `breakpoints` lists kinks or
/// support cutoffs the quadrature should split at.
struct SpectralDensity {
    double right_start = 0.0;
    std::optional<double> left_end;
    std::function<double(double)> density;
    std::function<double(double)> density_prime;
    std::vector<double> breakpoints;

    bool contains(double y) const {
        return y >= right_start || (left_end && y <= *left_end);
    }
    double density_at(double y) const { return contains(y) ? density(y) : 0.0; }
};

/// Solution of the undiscounted power-reward problem g(x) = (x^+)^gamma for
/// the pure up-jump compound Poisson model with drift to -infinity.
/// The optimal rule is to stop on first entrance into [x_star, inf), and
///
///   V(x) = e^{rho (x - x_star)} x_star^gamma   for x < x_star,
///   V(x) = x^gamma                             for x >= x_star.
struct ThresholdSolution {
    double gamma = 1.0;
    LevyModel model;
    double rho = 0.0;                 ///< alpha + lambda/a
    std::optional<double> x_circ;     ///< zero of sigma'; absent when gamma = 1
    double x_star = 0.0;

    double value(double x) const;
    long double value_ld(long double x) const;
    double reward(double x) const;  ///< (max(0,x))^gamma

    /// |V'(x_star-) - g'(x_star)| = |rho x*^gamma - gamma x*^{gamma-1}|;
    /// positive for every gamma > 1 (continuous but not smooth pasting).
    double smooth_fit_gap() const;
};

/// F(x; u) = (lambda/(-a)) int_0^inf e^{-alpha y} (1 + y/x)^u dy, evaluated
/// through the scaled upper incomplete gamma function as
/// (lambda/(-a alpha)) e^{alpha x} (alpha x)^{-u} Gamma(u+1, alpha x);
/// substituting t = alpha(x+y) in the defining integral gives the identity.
/// Strictly decreasing in x from +inf to lambda/(-a alpha) < 1, strictly
/// increasing in u.
double threshold_function(const LevyModel& m, double x, double u);

/// dF/dx = alpha [ (1 - u/(alpha x)) F(x;u) - lambda/(-a alpha) ].
double threshold_function_dx(const LevyModel& m, double x, double u);

/// sigma'(x) = -a gamma x^{gamma-1} - lambda e^{alpha x}
///             int_x^inf e^{-alpha y} gamma y^{gamma-1} dy
///           = (-a) gamma x^{gamma-1} (1 - F(x; gamma-1)),
/// the second form being the implemented reduction (the trailing integral is
/// gamma alpha^{-gamma} Gamma(gamma, alpha x) e^{alpha x}, which folds into
/// F at exponent gamma-1). Requires x > 0.
double representing_density(const LevyModel& m, double gamma, double x);

/// sigma''(x), from the analytic derivative of the reduction above.
double representing_density_prime(const LevyModel& m, double gamma, double x);

/// The implicit function phi(u): unique x > 0 with F(x; u) = 1, by damped
/// Newton from u/rho inside a sign-changing bracket. phi(1) equals
/// lambda/(-a alpha rho) in closed form. Throws NoRoot for u = 0 (F is
/// constant below 1) and NonConvergence if iteration stalls.
double solve_threshold(const LevyModel& m, double u);

/// x_star = phi(gamma), x_circ = phi(gamma-1) for gamma > 1.
ThresholdSolution solve_power_problem(const LevyModel& m, double gamma);

/// The representing density of the solved problem anchored at `threshold`
/// (support [threshold, inf)), with analytic derivative attached.
SpectralDensity power_reward_sigma(const LevyModel& m, double gamma, double threshold);

/// V(x) = int_support G_r(x, y) sigma'(y) dy by adaptive quadrature, split at
/// x and the support edges/breakpoints, with exponential change of variable
/// on the unbounded pieces.
double value_via_kernel(const ExpMixtureKernel& kernel, const SpectralDensity& sigma, double x,
                        double abs_tol = 1e-9);

/// Numerical verification that the candidate V from `sigma` is a value
/// function: continuity at the threshold, decay on the left tail of `grid`,
/// V = g above the threshold, V >= g below it.
struct ConditionsReport {
    bool continuous = false;
    bool decays_left = false;
    bool equals_reward_above = false;
    bool majorizes_below = false;
    double continuity_gap = 0.0;
    double max_reward_gap = 0.0;    ///< max |V - g| on [x_star, inf) grid points
    double worst_majorant_gap = 0.0;  ///< min V - g below x_star

    bool pass() const {
        return continuous && decays_left && equals_reward_above && majorizes_below;
    }
};

ConditionsReport verify_theorem_conditions(const ExpMixtureKernel& kernel,
                                           const SpectralDensity& sigma,
                                           const std::function<double(double)>& reward,
                                           double x_star, std::span<const double> grid);

/// Residuals g(x) - int_[x,inf) G(x,y) sigma'_x(y) dy for each candidate
/// threshold, where sigma'_x is the power-reward density re-anchored at x.
/// Zero only at the true threshold; strictly positive above it.
std::vector<double> uniqueness_scan(const ExpMixtureKernel& kernel, const LevyModel& m,
                                    double gamma, std::span<const double> candidates);

/// Finite-difference residual of the two-root kernel ODE
///
///   V'' - (rho1 + rho2) V' + rho1 rho2 V
///       = -(A1 + A2) sigma'' + (rho2 A1 + rho1 A2) sigma'
///
/// at x (sigma terms vanish below the support). V', V'' are central
/// differences with step h, evaluated in extended precision so the O(h^2)
/// truncation term stays visible above rounding noise at h ~ 1e-4.
/// Throws StepTooLarge when the stencil straddles the support edge.
double ode_residual(const RootSet& roots, const SpectralDensity& sigma,
                    const std::function<long double(long double)>& value, double x, double h);

/// Q(z) = r^{-1} [ int_{x*}^{z} f_I(y - z) sigma'(y) dy + P(I_r = 0) sigma'(z) ]
/// for z >= x*; the transform of V through the supremum.
double q_upper(const WhFactors& f, const SpectralDensity& sigma, double z,
               double abs_tol = 1e-10);

/// Mirror transform through the infimum for two-sided supports, z <= x_*.
double q_lower(const WhFactors& f, const SpectralDensity& sigma, double z,
               double abs_tol = 1e-10);

/// V(x) = E_x[Q(M_r); M_r >= x*] (+ the infimum term for two-sided supports),
/// evaluated by nested quadrature against the factor densities. Agrees with
/// value_via_kernel wherever both converge.
double value_via_maximum(const WhFactors& f, const SpectralDensity& sigma, double x,
                         double abs_tol = 1e-8);

}  // namespace levystop
