#include "levystop/model.hpp"

#include <cmath>

namespace levystop {

LevyModel validate(const LevyModel& raw) {
    if (!(raw.b >= 0.0)) throw InvalidParameter("diffusion coefficient b must be >= 0");
    if (!(raw.lambda >= 0.0)) throw InvalidParameter("up-jump intensity lambda must be >= 0");
    if (!(raw.mu >= 0.0)) throw InvalidParameter("down-jump intensity mu must be >= 0");
    if (!std::isfinite(raw.a) || !std::isfinite(raw.b) || !std::isfinite(raw.lambda) ||
        !std::isfinite(raw.alpha) || !std::isfinite(raw.mu) || !std::isfinite(raw.beta))
        throw InvalidParameter("model parameters must be finite");
    if (raw.lambda > 0.0 && !(raw.alpha > 0.0))
        throw NonPositiveRate("alpha must be > 0 when lambda > 0");
    if (raw.mu > 0.0 && !(raw.beta > 0.0))
        throw NonPositiveRate("beta must be > 0 when mu > 0");
    if (raw.a == 0.0 && raw.b == 0.0 && raw.lambda == 0.0 && raw.mu == 0.0)
        throw DegenerateModel("process is identically zero");
    return raw;
}

double exponent(const LevyModel& m, double z) {
    double v = m.a * z + 0.5 * m.b * m.b * z * z;
    if (m.has_up_jumps()) {
        if (z == m.alpha) throw PoleEvaluation("psi evaluated at the pole z = alpha");
        v += m.lambda * z / (m.alpha - z);
    }
    if (m.has_down_jumps()) {
        if (z == -m.beta) throw PoleEvaluation("psi evaluated at the pole z = -beta");
        v -= m.mu * z / (m.beta + z);
    }
    return v;
}

double exponent_prime(const LevyModel& m, double z) {
    double v = m.a + m.b * m.b * z;
    if (m.has_up_jumps()) {
        if (z == m.alpha) throw PoleEvaluation("psi' evaluated at the pole z = alpha");
        const double d = m.alpha - z;
        v += m.lambda * m.alpha / (d * d);
    }
    if (m.has_down_jumps()) {
        if (z == -m.beta) throw PoleEvaluation("psi' evaluated at the pole z = -beta");
        const double d = m.beta + z;
        v -= m.mu * m.beta / (d * d);
    }
    return v;
}

double exponent_second(const LevyModel& m, double z) {
    double v = m.b * m.b;
    if (m.has_up_jumps()) {
        if (z == m.alpha) throw PoleEvaluation("psi'' evaluated at the pole z = alpha");
        const double d = m.alpha - z;
        v += 2.0 * m.lambda * m.alpha / (d * d * d);
    }
    if (m.has_down_jumps()) {
        if (z == -m.beta) throw PoleEvaluation("psi'' evaluated at the pole z = -beta");
        const double d = m.beta + z;
        v += 2.0 * m.mu * m.beta / (d * d * d);
    }
    return v;
}

bool in_moment_strip(const LevyModel& m, double z) {
    if (m.has_up_jumps() && z >= m.alpha) return false;
    if (m.has_down_jumps() && z <= -m.beta) return false;
    return true;
}

double power_problem_rho(const LevyModel& m) {
    if (m.b != 0.0 || m.mu != 0.0 || !(m.lambda > 0.0))
        throw DriftNotNegative(
            "power problem requires a pure up-jump compound Poisson model (b = mu = 0, lambda > 0)");
    if (!(m.a < 0.0))
        throw DriftNotNegative("power problem requires negative drift a < 0");
    const double rho = m.alpha + m.lambda / m.a;
    if (!(rho > 0.0))
        throw DriftNotNegative("power problem requires alpha + lambda/a > 0 (drift to -infinity)");
    return rho;
}

RewardSpec RewardSpec::power(double gamma) {
    if (!(gamma >= 1.0)) throw InvalidParameter("power reward requires gamma >= 1");
    RewardSpec s;
    s.kind = Kind::power;
    s.gamma = gamma;
    return s;
}

RewardSpec RewardSpec::envelope(double a0, double a1, double rate) {
    if (!(a0 >= 0.0 && a1 >= 0.0 && rate >= 0.0))
        throw InvalidParameter("envelope constants must be nonnegative");
    RewardSpec s;
    s.kind = Kind::envelope;
    s.a0 = a0;
    s.a1 = a1;
    s.rate = rate;
    return s;
}

GrowthCheck check_growth_condition(const LevyModel& m, const RewardSpec& reward, double r) {
    if (reward.kind == RewardSpec::Kind::power) {
        if (r > 0.0) return {true, false};
        bool ok = true;
        try {
            power_problem_rho(m);
        } catch (const DriftNotNegative&) {
            ok = false;
        }
        return {ok, false};
    }
    const double q = reward.rate;
    if (m.has_up_jumps() && q >= m.alpha)
        throw EnvelopeOutsideStrip("envelope exponent must lie below alpha");
    const double v = exponent(m, q);
    if (v == r) return {false, true};
    return {v < r, false};
}

}  // namespace levystop
