#pragma once

#include "levystop/errors.hpp"

namespace levystop {

/// Jump diffusion with two-sided exponential jumps:
///
///   X_t = a t + b W_t + sum of Exp(alpha) up-jumps at rate lambda
///                     - sum of Exp(beta) down-jumps at rate mu.
///
/// The moment exponent psi (E e^{z X_t} = e^{t psi(z)}) is
///
///   psi(z) = a z + (1/2) b^2 z^2 + lambda z/(alpha - z) - mu z/(beta + z),
///
/// valid as a moment identity on z in (-beta, alpha); as a rational function
/// it extends to all z away from the poles, which is what the root finder in
/// spectral.hpp relies on.
struct LevyModel {
    double a = 0.0;       ///< drift
    double b = 0.0;       ///< diffusion coefficient, >= 0
    double lambda = 0.0;  ///< up-jump intensity, >= 0
    double alpha = 0.0;   ///< up-jump exponential rate, > 0 when lambda > 0
    double mu = 0.0;      ///< down-jump intensity, >= 0
    double beta = 0.0;    ///< down-jump exponential rate, > 0 when mu > 0

    bool has_up_jumps() const { return lambda > 0.0; }
    bool has_down_jumps() const { return mu > 0.0; }
};

/// Validates parameters and returns the model.
/// Throws NonPositiveRate, InvalidParameter or DegenerateModel.
LevyModel validate(const LevyModel& raw);

/// psi(z) by direct evaluation. Throws PoleEvaluation at an active pole.
double exponent(const LevyModel& m, double z);

/// psi'(z) = a + b^2 z + lambda alpha/(alpha-z)^2 - mu beta/(beta+z)^2.
double exponent_prime(const LevyModel& m, double z);

/// psi''(z); positive on (-beta, alpha) whenever b > 0 or a jump side is active.
double exponent_second(const LevyModel& m, double z);

/// True when z lies in the open strip where the moment identity holds.
bool in_moment_strip(const LevyModel& m, double z);

/// Rate rho = alpha + lambda/a of the undiscounted one-sided problem.
/// Requires b = mu = 0, a < 0, lambda > 0 and rho > 0 (drift to -infinity);
/// throws DriftNotNegative otherwise.
double power_problem_rho(const LevyModel& m);

/// Reward description: either (x^+)^gamma or an exponential growth envelope
/// g(x) <= a0 + a1 e^{rate x}.
struct RewardSpec {
    enum class Kind { power, envelope };
    Kind kind;
    double gamma = 1.0;  // power kind
    double a0 = 0.0, a1 = 0.0, rate = 0.0;  // envelope kind

    static RewardSpec power(double gamma);
    static RewardSpec envelope(double a0, double a1, double rate);
};

struct GrowthCheck {
    bool holds;     ///< strict inequality psi(rate) < r
    bool boundary;  ///< psi(rate) == r exactly: the condition fails at the edge
};

/// Checks the integrability condition for the discounted supremum of the
/// reward. For an envelope with exponent q this is psi(q) < r; equality is
/// reported with the boundary flag. For the power reward at r = 0 the check
/// is the drift-to--infinity requirement rho > 0; at r > 0 it always holds
/// (some envelope exponent in (0, alpha) works since psi(0) = 0 < r).
/// Throws EnvelopeOutsideStrip when the envelope exponent reaches alpha.
GrowthCheck check_growth_condition(const LevyModel& m, const RewardSpec& reward, double r);

}  // namespace levystop
