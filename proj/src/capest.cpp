#include "mpmab/capest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpmab {

double phi(std::int64_t x, double delta) {
    if (x < 1) throw std::invalid_argument("phi: x must be a positive integer");
    if (!(delta > 0.0) || delta >= 1.0) throw std::invalid_argument("phi: delta must lie in (0,1)");
    const double xd = static_cast<double>(x);
    return std::sqrt((1.0 + 1.0 / xd) * std::log(2.0 * std::sqrt(xd + 1.0) / delta) / (2.0 * xd));
}

double rho(std::int64_t x, double delta) {
    if (x < 1) throw std::invalid_argument("rho: x must be a positive integer");
    if (!(delta > 0.0) || delta > 2.0) throw std::invalid_argument("rho: delta must lie in (0,2]");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(x)));
}

ArmStatistics make_arm_statistics(int plays) {
    ArmStatistics s;
    s.m_lower = 1;
    s.m_upper = plays;
    return s;
}

ArmStatistics update_capacity_bounds(const ArmStatistics& stats, double delta, int plays,
                                     WidthKind width) {
    if (stats.ie_count == 0 || stats.ue_count == 0) return stats;

    const auto half_width = [&](std::int64_t n) {
        return width == WidthKind::Uci ? phi(n, delta) : rho(n, delta);
    };
    const double w = half_width(stats.ie_count) + half_width(stats.ue_count);

    ArmStatistics next = stats;

    int lower = stats.m_lower;
    if (stats.mu_hat + w > 0.0) {
        const double lower_candidate = std::ceil(stats.nu_hat / (stats.mu_hat + w));
        if (lower_candidate > static_cast<double>(lower)) {
            lower = lower_candidate >= static_cast<double>(plays)
                        ? plays
                        : static_cast<int>(lower_candidate);
        }
    }
    lower = std::clamp(lower, 1, stats.m_upper);

    int upper = stats.m_upper;
    if (stats.mu_hat - w > 0.0) {
        const double upper_candidate = std::floor(stats.nu_hat / (stats.mu_hat - w));
        if (upper_candidate < static_cast<double>(upper)) {
            upper = upper_candidate <= 1.0 ? 1 : static_cast<int>(upper_candidate);
        }
    }
    upper = std::clamp(upper, lower, plays);

    next.m_lower = lower;
    next.m_upper = upper;
    return next;
}

std::optional<int> capacity_estimate(const ArmStatistics& stats) {
    if (stats.m_lower == stats.m_upper) return stats.m_lower;
    return std::nullopt;
}

double kl_bernoulli(double p, double q) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (p == q) return 0.0;
    if (q <= 0.0 || q >= 1.0) return inf;
    double value = 0.0;
    if (p > 0.0) value += p * std::log(p / q);
    if (p < 1.0) value += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
    return value;
}

double kl_gaussian(double p, double q, double variance) {
    if (!(variance > 0.0)) throw std::invalid_argument("kl_gaussian: variance must be positive");
    const double d = p - q;
    return d * d / (2.0 * variance);
}

double klucb_budget(std::int64_t t) {
    const double logt = std::log(static_cast<double>(std::max<std::int64_t>(t, 1)));
    return logt + 4.0 * std::log(std::max(logt, 1.0));
}

double klucb_index(double mu_hat, std::int64_t n, std::int64_t t, RewardKind kind,
                   double variance) {
    if (n < 1) throw std::invalid_argument("klucb_index: n must be positive");
    const double budget = klucb_budget(t) / static_cast<double>(n);

    if (kind == RewardKind::Gaussian) {
        return mu_hat + std::sqrt(2.0 * variance * budget);
    }

    // Bernoulli: kl(mu_hat, q) is increasing in q on [mu_hat, 1]. Bisect to
    // 1e-9 on q and keep halving until the budget residual is small too (the
    // divergence is steep near q = 1, where q-precision alone is not enough).
    if (mu_hat >= 1.0) return 1.0;
    double lo = std::max(mu_hat, 0.0);
    double hi = 1.0;
    if (kl_bernoulli(mu_hat, 1.0 - 1e-15) <= budget) return 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        if (hi - lo <= 1e-9 &&
            std::abs(kl_bernoulli(mu_hat, lo) - budget) <= 1e-6 / static_cast<double>(n))
            break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at machine precision
        if (kl_bernoulli(mu_hat, mid) <= budget)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double elimination_radius(std::int64_t tau, std::int64_t horizon) {
    if (tau < 1) throw std::invalid_argument("elimination_radius: tau must be positive");
    if (horizon < tau) throw std::invalid_argument("elimination_radius: need tau <= T");
    const double ratio = static_cast<double>(horizon) / static_cast<double>(tau);
    const double reg_log = std::max(std::log(ratio), 1.0);
    return 2.0 * std::sqrt(2.0 * reg_log / static_cast<double>(tau));
}

}  // namespace mpmab
