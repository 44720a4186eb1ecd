#include "levystop/wiener_hopf.hpp"

#include <cmath>
#include <limits>

namespace levystop {

namespace {

// One rational factor: poles at the given roots, an optional simple zero.
// Returns the atom (limit away from the half line) and mixture components,
// via residues of prod_k rho_k/(rho_k - z) * (zero - z)/zero.
HalfLineLaw build_factor(HalfLine side, const std::vector<double>& roots, bool has_zero,
                         double zero) {
    HalfLineLaw law;
    law.side = side;
    const std::size_t n = roots.size();
    if (n == 0) {
        law.atom = 1.0;  // the factor is identically 1
        return law;
    }
    if (has_zero && n == 1) {
        law.atom = roots[0] / zero;
    } else {
        law.atom = 0.0;  // more poles than zeros: the factor vanishes at infinity
    }
    for (std::size_t j = 0; j < n; ++j) {
        double w = has_zero ? (zero - roots[j]) / zero : 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            w *= roots[k] / (roots[k] - roots[j]);
        }
        law.components.push_back({w, std::abs(roots[j])});
    }
    return law;
}

}  // namespace

double HalfLineLaw::mgf(double z) const {
    const double s = (side == HalfLine::nonnegative) ? 1.0 : -1.0;
    double v = atom;
    for (const auto& c : components) {
        const double denom = c.rate - s * z;
        if (denom <= 0.0)
            throw OutOfConvergenceStrip("mgf argument outside the convergence half plane");
        v += c.weight * c.rate / denom;
    }
    return v;
}

double HalfLineLaw::density(double x) const {
    const double s = (side == HalfLine::nonnegative) ? 1.0 : -1.0;
    if (s * x < 0.0) return 0.0;
    double v = 0.0;
    for (const auto& c : components) v += c.weight * c.rate * std::exp(-c.rate * s * x);
    return v;
}

double HalfLineLaw::mean() const {
    const double s = (side == HalfLine::nonnegative) ? 1.0 : -1.0;
    double v = 0.0;
    for (const auto& c : components) v += c.weight / c.rate;
    return s * v;
}

double HalfLineLaw::min_rate() const {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& c : components) v = std::min(v, c.rate);
    return v;
}

double HalfLineLaw::weight_sum() const {
    double v = atom;
    for (const auto& c : components) v += c.weight;
    return v;
}

double HalfLineLaw::sample(Rng& rng) const {
    const double s = (side == HalfLine::nonnegative) ? 1.0 : -1.0;
    double u = rng.u01();
    if (u <= atom) return 0.0;
    u -= atom;
    for (const auto& c : components) {
        if (c.weight < 0.0)
            throw FactorConstructionFailure("cannot sample a signed mixture");
        if (u <= c.weight || &c == &components.back()) return s * rng.exponential(c.rate);
        u -= c.weight;
    }
    return 0.0;
}

WhFactors wh_factors(const LevyModel& m, double r) {
    if (!(r > 0.0)) throw InvalidParameter("wh_factors requires r > 0");
    const RootSet rs = exponent_roots(m, r);

    WhFactors f;
    f.r = r;
    f.supremum = build_factor(HalfLine::nonnegative, rs.positive_roots(), m.has_up_jumps(),
                              m.alpha);
    f.infimum = build_factor(HalfLine::nonpositive, rs.negative_roots(), m.has_down_jumps(),
                             -m.beta);

    if (std::abs(f.supremum.weight_sum() - 1.0) > 1e-12 ||
        std::abs(f.infimum.weight_sum() - 1.0) > 1e-12)
        throw FactorConstructionFailure("factor weights do not sum to one");

    // independent check of the product identity on the inner strip
    const auto neg = rs.negative_roots();
    const auto pos = rs.positive_roots();
    const double lo = neg.empty() ? -1.0 : neg.back();
    const double hi = pos.empty() ? 1.0 : pos.front();
    for (int i = 1; i <= 8; ++i) {
        const double z = lo + (hi - lo) * i / 9.0;
        const double res =
            f.supremum.mgf(z) * f.infimum.mgf(z) * (r - exponent(m, z)) / r - 1.0;
        if (std::abs(res) > 1e-8)
            throw FactorConstructionFailure("factorization identity residual too large");
    }
    return f;
}

double factorization_residual(const LevyModel& m, double r, int grid_size) {
    const WhFactors f = wh_factors(m, r);
    const RootSet rs = exponent_roots(m, r);
    const auto neg = rs.negative_roots();
    const auto pos = rs.positive_roots();
    const double lo = neg.empty() ? -1.0 : neg.back();
    const double hi = pos.empty() ? 1.0 : pos.front();
    double worst = 0.0;
    for (int i = 1; i <= grid_size; ++i) {
        const double z = lo + (hi - lo) * i / (grid_size + 1.0);
        const double res =
            f.supremum.mgf(z) * f.infimum.mgf(z) * (r - exponent(m, z)) / r - 1.0;
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

}  // namespace levystop
