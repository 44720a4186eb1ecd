#include "levystop/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace levystop {

namespace {

// Advances a linear-or-Brownian segment of given duration, updating the
// running extrema. For b > 0 the interior is discretized with `step`.
struct SegmentWalker {
    const LevyModel& m;
    Rng& rng;
    double step;  // only used when m.b > 0

    void advance(double& x, double duration, double& sup, double& inf) const {
        if (duration <= 0.0) return;
        if (m.b == 0.0) {
            x += m.a * duration;
            sup = std::max(sup, x);
            inf = std::min(inf, x);
            return;
        }
        const int nsub = std::max(1, static_cast<int>(std::ceil(duration / step)));
        const double dt = duration / nsub;
        const double sdt = std::sqrt(dt);
        for (int i = 0; i < nsub; ++i) {
            x += m.a * dt + m.b * sdt * rng.normal();
            sup = std::max(sup, x);
            inf = std::min(inf, x);
        }
    }
};

}  // namespace

PathSkeleton sample_path(const LevyModel& m, double horizon, std::uint64_t seed,
                         std::uint64_t index) {
    validate(m);
    if (!(horizon > 0.0)) throw InvalidParameter("horizon must be positive");
    Rng rng = Rng::stream(seed, index);
    PathSkeleton path;
    path.seed = seed;
    path.times.push_back(0.0);
    path.values.push_back(0.0);

    const double total_rate = m.lambda + m.mu;
    double t = 0.0, x = 0.0;
    while (true) {
        const double wait =
            total_rate > 0.0 ? rng.exponential(total_rate) : std::numeric_limits<double>::infinity();
        if (t + wait >= horizon) {
            x += m.a * (horizon - t);
            if (m.b > 0.0) x += m.b * std::sqrt(horizon - t) * rng.normal();
            path.times.push_back(horizon);
            path.values.push_back(x);
            return path;
        }
        t += wait;
        x += m.a * wait;
        if (m.b > 0.0) x += m.b * std::sqrt(wait) * rng.normal();
        const bool up = rng.u01() * total_rate <= m.lambda;
        x += up ? rng.exponential(m.alpha) : -rng.exponential(m.beta);
        path.times.push_back(t);
        path.values.push_back(x);
    }
}

std::vector<TripleSample> sample_triples(const LevyModel& m, double r, std::size_t n,
                                         std::uint64_t seed) {
    validate(m);
    if (!(r > 0.0)) throw InvalidParameter("sample_triples requires r > 0");
    std::vector<TripleSample> out(n);
    const double step = 1e-3 / r;
    const double total_rate = m.lambda + m.mu;

    for (std::size_t i = 0; i < n; ++i) {
        Rng rng = Rng::stream(seed, i);
        SegmentWalker walker{m, rng, step};
        const double tau = rng.exponential(r);
        double t = 0.0, x = 0.0, sup = 0.0, inf = 0.0;
        while (true) {
            const double wait = total_rate > 0.0 ? rng.exponential(total_rate)
                                                 : std::numeric_limits<double>::infinity();
            if (t + wait >= tau) {
                walker.advance(x, tau - t, sup, inf);
                break;
            }
            walker.advance(x, wait, sup, inf);
            t += wait;
            const bool up = rng.u01() * total_rate <= m.lambda;
            x += up ? rng.exponential(m.alpha) : -rng.exponential(m.beta);
            sup = std::max(sup, x);
            inf = std::min(inf, x);
        }
        out[i] = {x, sup, inf};
    }
    return out;
}

MCEstimate estimate_policy_value(const LevyModel& m, double gamma, double threshold, double x0,
                                 std::size_t n, std::uint64_t seed) {
    const double rho = power_problem_rho(m);
    if (!(gamma >= 1.0)) throw DomainError("power reward requires gamma >= 1");
    if (n < 2) throw InvalidParameter("need at least two samples");

    MCEstimate est;
    est.n = n;
    est.seed = seed;

    if (x0 >= threshold) {  // immediate stop
        est.mean = x0 <= 0.0 ? 0.0 : std::pow(x0, gamma);
        est.std_error = 0.0;
        est.bias_bound = 0.0;
        return est;
    }

    const double depth = 14.0 / rho;
    const double cutoff = threshold - depth;
    est.bias_bound = std::exp(-rho * depth);

    // Only the embedded post-jump chain matters: between jumps the path
    // drifts down by |a| * Exp(lambda), each jump adds Exp(alpha).
    const double drift_scale = -m.a / m.lambda;
    const double inv_alpha = 1.0 / m.alpha;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng = Rng::stream(seed, i);
        double s = x0;
        double reward = 0.0;
        while (true) {
            s += rng.exponential(1.0) * inv_alpha - rng.exponential(1.0) * drift_scale;
            if (s >= threshold) {
                reward = s <= 0.0 ? 0.0 : std::pow(s, gamma);
                break;
            }
            if (s < cutoff) break;
        }
        sum += reward;
        sumsq += reward * reward;
    }
    est.mean = sum / static_cast<double>(n);
    const double var =
        std::max(0.0, sumsq / static_cast<double>(n) - est.mean * est.mean);
    est.std_error = std::sqrt(var / static_cast<double>(n - 1));
    return est;
}

}  // namespace levystop
