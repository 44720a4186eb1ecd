#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "levystop/model.hpp"

namespace levystop {

/// One real solution of psi(z) = r together with psi'(rho) and the
/// partial-fraction coefficient A = 1/psi'(rho) of 1/(r - psi).
struct Root {
    double rho;
    double slope;  ///< psi'(rho)
    double coeff;  ///< 1/psi'(rho)
};

/// All real roots of psi(z) = r, sorted increasingly. The canonical model
/// classes give two roots (Brownian motion with drift; one-sided compound
/// Poisson with drift) or four (diffusion with two-sided jumps); sub-models
/// with one or three roots are handled by the same bracketing.
struct RootSet {
    double r = 0.0;
    std::vector<Root> roots;

    std::size_t count() const { return roots.size(); }
    const Root& operator[](std::size_t i) const { return roots[i]; }

    std::vector<double> negative_roots() const;  ///< rho < 0
    std::vector<double> positive_roots() const;  ///< rho > 0
};

/// Locates every real root of psi(z) = r using the pole/interval structure:
/// at most one root beyond each jump pole and a convex central piece through
/// z = 0. Brackets are bisected and Newton-polished to |psi(rho) - r| below
/// 1e-12 max(1, r). For r = 0 the zero root is taken exactly and psi'(0) < 0
/// is required (throws DriftAssumptionViolated).
RootSet exponent_roots(const LevyModel& m, double r);

/// The (rho_k, A_k) pairs of 1/(r - psi(z)) = sum_k A_k / (rho_k - z).
std::vector<std::pair<double, double>> partial_fractions(const RootSet& rs);

/// Evaluates sum_k A_k/(rho_k - z); equals 1/(r - psi(z)) away from roots.
double partial_fraction_sum(const RootSet& rs, double z);

struct ExpTerm {
    double coeff;
    double rate;
};

/// Green kernel G_r(0, .) of the killed process as an exponential mixture on
/// each half line: density sum_j c_j e^{-rate_j x} on {x < 0} and {x > 0}.
/// A rate-0 term (undiscounted transient case) stores the constant branch.
/// G_r(x, y) is recovered by spatial homogeneity as density(y - x).
struct ExpMixtureKernel {
    double r = 0.0;
    std::vector<ExpTerm> negative_side;
    std::vector<ExpTerm> positive_side;
    double value_at_zero = 0.0;  ///< min of the one-sided limits (lower semicontinuous)

    double density(double x) const;
    double left_limit_at_zero() const;
    double right_limit_at_zero() const;

    /// Closed-form integral over the real line; +inf when a rate-0 branch is
    /// present. Equals 1/r for r > 0.
    double total_mass() const;

    /// Distribution function of r * G_r(0, .); requires r > 0.
    double cdf(double x) const;

    double min_positive_rate() const;      ///< smallest rate on the positive side
    double min_negative_rate_abs() const;  ///< smallest |rate| on the negative side
};

/// Builds the kernel from the roots of psi = r: rho <= 0 roots contribute
/// (-A_k, rho_k) on the negative side, rho > 0 roots (A_k, rho_k) on the
/// positive side.
ExpMixtureKernel green_kernel(const LevyModel& m, double r);

/// G_r(x, y) via spatial homogeneity.
inline double green_density(const ExpMixtureKernel& k, double x, double y) {
    return k.density(y - x);
}

}  // namespace levystop
