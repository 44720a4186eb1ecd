#include "levystop/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace levystop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stable real-root pair of A z^2 + B z + C = 0.
std::pair<double, double> quadratic_roots(double A, double B, double C) {
    double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) {
        if (disc > -1e-12 * (B * B + 4.0 * std::abs(A * C)))
            disc = 0.0;
        else
            throw RootBracketFailure("quadratic for psi(z) = r has no real roots");
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (B + std::copysign(sq, B));
    double z1, z2;
    if (q != 0.0) {
        z1 = q / A;
        z2 = C / q;
    } else {  // B == 0 and C == 0 (or disc clipped): double root at 0
        z1 = 0.0;
        z2 = -B / A;
    }
    if (z1 > z2) std::swap(z1, z2);
    return {z1, z2};
}

double scale_of_terms(const LevyModel& m, double z, double r) {
    double s = std::abs(m.a * z) + 0.5 * m.b * m.b * z * z + std::abs(r) + 1.0;
    if (m.has_up_jumps()) s += std::abs(m.lambda * z / (m.alpha - z));
    if (m.has_down_jumps()) s += std::abs(m.mu * z / (m.beta + z));
    return s;
}

// Bisection followed by bracket-guarded Newton on f(z) = psi(z) - r.
double refine_root(const LevyModel& m, double r, double lo, double hi) {
    auto f = [&](double z) { return exponent(m, z) - r; };
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw RootBracketFailure("bracket endpoints do not straddle the target");

    for (int i = 0; i < 80 && hi - lo > 1e-8 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }

    double z = 0.5 * (lo + hi);
    double fz = f(z);
    for (int i = 0; i < 60; ++i) {
        if (fz == 0.0) break;
        if ((fz > 0.0) == (flo > 0.0))
            lo = z;
        else
            hi = z;
        const double dpsi = exponent_prime(m, z);
        double znew = (dpsi != 0.0) ? z - fz / dpsi : 0.5 * (lo + hi);
        if (!(znew > lo && znew < hi)) znew = 0.5 * (lo + hi);
        if (znew == z) break;
        z = znew;
        fz = f(z);
    }

    const double tol = std::max(1e-12 * std::max(1.0, std::abs(r)),
                                16.0 * std::numeric_limits<double>::epsilon() * scale_of_terms(m, z, r));
    if (std::abs(fz) > tol)
        throw RootBracketFailure("root refinement stalled above tolerance");
    return z;
}

// Offset from a pole, per the interval bracketing: 1e-9 * scale, shrunk until
// the divergent side dominates. psi -> +inf at the central-interval ends and
// -inf at the outer ends, so the caller states which sign it needs.
double pole_offset(const LevyModel& m, double r, double pole, int side, bool want_positive) {
    double eps = 1e-9 * std::max(1.0, std::abs(pole));
    for (int i = 0; i < 12; ++i) {
        const double z = pole + side * eps;
        const double v = exponent(m, z) - r;
        if (want_positive ? v > 0.0 : v < 0.0) return z;
        eps *= 0.1;
    }
    throw RootBracketFailure("could not establish a pole-side bracket endpoint");
}

// Expands from `start` by doubling `step` in direction `dir` until
// psi(z) - r > 0, i.e. until the +inf end behavior shows.
double expand_until_positive(const LevyModel& m, double r, double start, double dir) {
    double step = std::max(1.0, std::abs(start));
    for (int i = 0; i < 200; ++i) {
        const double z = start + dir * step;
        if (exponent(m, z) - r > 0.0) return z;
        step *= 2.0;
    }
    throw RootBracketFailure("no sign change found while expanding the bracket");
}

}  // namespace

std::vector<double> RootSet::negative_roots() const {
    std::vector<double> v;
    for (const auto& rt : roots)
        if (rt.rho < 0.0) v.push_back(rt.rho);
    return v;
}

std::vector<double> RootSet::positive_roots() const {
    std::vector<double> v;
    for (const auto& rt : roots)
        if (rt.rho > 0.0) v.push_back(rt.rho);
    return v;
}

RootSet exponent_roots(const LevyModel& m, double r) {
    if (!(r >= 0.0)) throw InvalidParameter("discount r must be >= 0");
    if (r == 0.0 && !(exponent_prime(m, 0.0) < 0.0))
        throw DriftAssumptionViolated("r = 0 requires psi'(0) < 0");

    const bool up = m.has_up_jumps();
    const bool down = m.has_down_jumps();
    std::vector<double> locations;

    if (m.b == 0.0 && !up && !down) {
        // pure drift: psi(z) = a z
        locations.push_back(r / m.a);
    } else if (m.b > 0.0 && !up && !down) {
        // (b^2/2) z^2 + a z - r = 0
        auto [z1, z2] = quadratic_roots(0.5 * m.b * m.b, m.a, -r);
        locations = {z1, z2};
    } else if (m.b == 0.0 && up && !down && m.a != 0.0) {
        // (r - psi)(alpha - z) = 0: a z^2 - (r + a alpha + lambda) z + r alpha = 0
        auto [z1, z2] = quadratic_roots(m.a, -(r + m.a * m.alpha + m.lambda), r * m.alpha);
        locations = {z1, z2};
    } else if (m.b == 0.0 && !up && down && m.a != 0.0) {
        // (r - psi)(beta + z) = 0: -a z^2 + (r - a beta + mu) z + r beta = 0
        auto [z1, z2] = quadratic_roots(-m.a, r - m.a * m.beta + m.mu, r * m.beta);
        locations = {z1, z2};
    } else {
        // Generic interval bracketing around the poles.
        const std::optional<double> pole_up = up ? std::optional<double>(m.alpha) : std::nullopt;
        const std::optional<double> pole_down = down ? std::optional<double>(-m.beta) : std::nullopt;
        const bool plus_inf_at_minus = m.b > 0.0 || m.a < 0.0;
        const bool plus_inf_at_plus = m.b > 0.0 || m.a > 0.0;

        // central interval (pole_down, pole_up) around 0
        {
            // left central root: psi decreasing through it, psi -> +inf at the left end
            const bool left_end_blows = pole_down.has_value() || plus_inf_at_minus;
            if (r > 0.0) {
                if (left_end_blows) {
                    const double lo = pole_down ? pole_offset(m, r, *pole_down, +1, true)
                                                : expand_until_positive(m, r, 0.0, -1.0);
                    locations.push_back(refine_root(m, r, lo, 0.0));
                }
                const bool right_end_blows = pole_up.has_value() || plus_inf_at_plus;
                if (right_end_blows) {
                    const double hi = pole_up ? pole_offset(m, r, *pole_up, -1, true)
                                              : expand_until_positive(m, r, 0.0, +1.0);
                    locations.push_back(refine_root(m, r, 0.0, hi));
                }
            } else {
                // r = 0 with psi'(0) < 0: z = 0 exactly, plus one root to the right
                locations.push_back(0.0);
                const bool right_end_blows = pole_up.has_value() || plus_inf_at_plus;
                if (right_end_blows) {
                    double t = pole_up ? 0.5 * *pole_up : 1.0;
                    while (!(exponent(m, t) < 0.0)) t *= 0.5;
                    const double hi = pole_up ? pole_offset(m, r, *pole_up, -1, true)
                                              : expand_until_positive(m, r, t, +1.0);
                    locations.push_back(refine_root(m, r, t, hi));
                }
            }
        }
        // beyond the up-jump pole: psi -> -inf at alpha+, root iff psi -> +inf at +inf
        if (pole_up && plus_inf_at_plus) {
            const double lo = pole_offset(m, r, *pole_up, +1, false);
            const double hi = expand_until_positive(m, r, *pole_up, +1.0);
            locations.push_back(refine_root(m, r, lo, hi));
        }
        // beyond the down-jump pole
        if (pole_down && plus_inf_at_minus) {
            const double hi = pole_offset(m, r, *pole_down, -1, false);
            const double lo = expand_until_positive(m, r, *pole_down, -1.0);
            locations.push_back(refine_root(m, r, lo, hi));
        }
    }

    std::sort(locations.begin(), locations.end());
    RootSet rs;
    rs.r = r;
    for (double z : locations) {
        const double slope = exponent_prime(m, z);
        if (slope == 0.0) throw RootBracketFailure("degenerate double root of psi(z) = r");
        rs.roots.push_back({z, slope, 1.0 / slope});
    }
    return rs;
}

std::vector<std::pair<double, double>> partial_fractions(const RootSet& rs) {
    std::vector<std::pair<double, double>> out;
    out.reserve(rs.count());
    for (const auto& rt : rs.roots) out.emplace_back(rt.rho, rt.coeff);
    return out;
}

double partial_fraction_sum(const RootSet& rs, double z) {
    double s = 0.0;
    for (const auto& rt : rs.roots) s += rt.coeff / (rt.rho - z);
    return s;
}

double ExpMixtureKernel::density(double x) const {
    if (x == 0.0) return value_at_zero;
    double s = 0.0;
    if (x < 0.0) {
        for (const auto& t : negative_side) s += t.coeff * std::exp(-t.rate * x);
    } else {
        for (const auto& t : positive_side) s += t.coeff * std::exp(-t.rate * x);
    }
    return s;
}

double ExpMixtureKernel::left_limit_at_zero() const {
    double s = 0.0;
    for (const auto& t : negative_side) s += t.coeff;
    return s;
}

double ExpMixtureKernel::right_limit_at_zero() const {
    double s = 0.0;
    for (const auto& t : positive_side) s += t.coeff;
    return s;
}

double ExpMixtureKernel::total_mass() const {
    double s = 0.0;
    for (const auto& t : negative_side) {
        if (t.rate == 0.0) return kInf;
        s += t.coeff / (-t.rate);
    }
    for (const auto& t : positive_side) {
        if (t.rate == 0.0) return kInf;
        s += t.coeff / t.rate;
    }
    return s;
}

double ExpMixtureKernel::cdf(double x) const {
    if (!(r > 0.0)) throw DomainError("kernel cdf requires r > 0");
    // int_{-inf}^{min(x,0)} of the negative side, plus the positive side piece
    double s = 0.0;
    const double xn = std::min(x, 0.0);
    for (const auto& t : negative_side) s += t.coeff / (-t.rate) * std::exp(-t.rate * xn);
    if (x > 0.0)
        for (const auto& t : positive_side) s += t.coeff / t.rate * (1.0 - std::exp(-t.rate * x));
    return r * s;
}

double ExpMixtureKernel::min_positive_rate() const {
    double v = kInf;
    for (const auto& t : positive_side) v = std::min(v, t.rate);
    return v;
}

double ExpMixtureKernel::min_negative_rate_abs() const {
    double v = kInf;
    for (const auto& t : negative_side) v = std::min(v, std::abs(t.rate));
    return v;
}

ExpMixtureKernel green_kernel(const LevyModel& m, double r) {
    if (m.b == 0.0 && m.a == 0.0)
        throw DomainError(
            "driftless pure-jump resolvent has an atom at the origin; "
            "no absolutely continuous kernel exists");
    const RootSet rs = exponent_roots(m, r);
    ExpMixtureKernel k;
    k.r = r;
    for (const auto& rt : rs.roots) {
        if (rt.rho <= 0.0)
            k.negative_side.push_back({-rt.coeff, rt.rho});
        else
            k.positive_side.push_back({rt.coeff, rt.rho});
    }
    k.value_at_zero = std::min(k.left_limit_at_zero(), k.right_limit_at_zero());
    return k;
}

}  // namespace levystop
