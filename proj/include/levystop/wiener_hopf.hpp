#pragma once

#include <vector>

#include "levystop/model.hpp"
#include "levystop/rng.hpp"
#include "levystop/spectral.hpp"

namespace levystop {

enum class HalfLine { nonnegative, nonpositive };

struct MixtureComponent {
    double weight;
    double rate;  ///< > 0; density weight * rate * e^{-rate |x|} on the half line
};

/// Law of the killed supremum M_r or infimum I_r: an atom at 0 plus an
/// exponential mixture on one half line.
struct HalfLineLaw {
    HalfLine side;
    double atom = 0.0;
    std::vector<MixtureComponent> components;

    /// E e^{z X} = atom + sum w_j eta_j / (eta_j - s z), s = +-1 by side.
    /// Throws OutOfConvergenceStrip outside the convergence half plane.
    double mgf(double z) const;

    /// Continuous part of the density at x (0 off the supported half line).
    double density(double x) const;

    double mean() const;
    double min_rate() const;
    double weight_sum() const;  ///< atom + sum w_j, equals 1

    /// Draws a sample; requires nonnegative component weights.
    double sample(Rng& rng) const;
};

/// Wiener-Hopf factors of r/(r - psi): the supremum law is assembled from the
/// positive roots of psi = r (poles) and a zero at alpha when up-jumps are
/// present; the infimum law mirrors this with the negative roots and -beta.
/// Both factors are 1 at z = 0; atoms appear exactly when pole and zero
/// counts coincide (the process cannot move immediately in that direction).
struct WhFactors {
    HalfLineLaw supremum;
    HalfLineLaw infimum;
    double r = 0.0;
};

/// Builds both factor laws for r > 0. Weights come from exact residue
/// extraction of the rational factor; the identity
/// r/(r - psi(z)) = mgf_sup(z) * mgf_inf(z) is validated on the strip between
/// the innermost roots and FactorConstructionFailure is thrown if it fails.
WhFactors wh_factors(const LevyModel& m, double r);

/// Max over a grid strictly inside (largest negative root, smallest positive
/// root) of |mgf_sup(z) mgf_inf(z) (r - psi(z))/r - 1|.
double factorization_residual(const LevyModel& m, double r, int grid_size);

}  // namespace levystop
