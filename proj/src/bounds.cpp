#include "mpmab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpmab/capest.hpp"

namespace mpmab {

BoundCurves theoretical_curves(const Environment& env, double variance,
                               std::span<const std::int64_t> horizon_grid) {
    const int K = env.num_arms();
    const bool gaussian = env.reward_kind() == RewardKind::Gaussian;

    // Work in descending-mean order.
    std::vector<int> order(static_cast<std::size_t>(K));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return env.arm(a).mean > env.arm(b).mean; });

    std::vector<double> mu(static_cast<std::size_t>(K));
    std::vector<int> m(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) {
        mu[static_cast<std::size_t>(i)] = env.arm(order[static_cast<std::size_t>(i)]).mean;
        m[static_cast<std::size_t>(i)] = env.arm(order[static_cast<std::size_t>(i)]).capacity;
    }

    const OptimalAction opt = optimal_action(env);
    const int L = opt.top_arm_count;
    int used_before_last = 0;
    for (int i = 0; i + 1 < L; ++i) used_before_last += m[static_cast<std::size_t>(i)];
    const int remainder = env.plays() - used_before_last;  // plays on the least favored arm

    const auto kl_gap = [&](double p, double q) {
        return gaussian ? kl_gaussian(p, q, variance) : kl_bernoulli(p, q);
    };

    const std::size_t iL = static_cast<std::size_t>(L - 1);
    double discrimination = 0.0;
    for (int k = L; k < K; ++k) {
        const double gap = mu[iL] - mu[static_cast<std::size_t>(k)];
        if (gap <= 0.0) continue;  // duplicate means contribute nothing
        discrimination += gap / kl_gap(mu[static_cast<std::size_t>(k)], mu[iL]);
    }

    BoundCurves curves;
    curves.lower_coefficient = discrimination;
    if (gaussian) {
        for (int k = 0; k + 1 < L; ++k) {
            const std::size_t i = static_cast<std::size_t>(k);
            curves.lower_coefficient +=
                (mu[i] - mu[iL]) * variance * static_cast<double>(m[i]) * static_cast<double>(m[i]) /
                (mu[i] * mu[i]);
        }
        if (L < K) {
            const double denom = static_cast<double>(m[iL] - remainder + 1);
            curves.lower_coefficient += (mu[iL] - mu[static_cast<std::size_t>(L)]) * variance *
                                        static_cast<double>(m[iL]) * static_cast<double>(m[iL]) /
                                        (denom * denom * mu[iL] * mu[iL]);
        }
    }

    // Upper bound: same discrimination term plus the capacity-learning terms
    // weighted by w_k = f(a*) - m_k mu_k + mu_1.
    curves.upper_coefficient = discrimination;
    for (int k = 0; k + 1 < L; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const double w = opt.value - static_cast<double>(m[i]) * mu[i] + mu[0];
        curves.upper_coefficient +=
            49.0 * w * static_cast<double>(m[i]) * static_cast<double>(m[i]) / (mu[i] * mu[i]);
    }
    {
        const double w = opt.value - static_cast<double>(m[iL]) * mu[iL] + mu[0];
        const double denom = static_cast<double>(m[iL] - remainder + 1);
        curves.upper_coefficient += 49.0 * w * static_cast<double>(m[iL]) *
                                    static_cast<double>(m[iL]) / (denom * denom * mu[iL] * mu[iL]);
    }

    curves.horizon_grid.assign(horizon_grid.begin(), horizon_grid.end());
    for (const std::int64_t T : horizon_grid) {
        const double logT = std::log(static_cast<double>(std::max<std::int64_t>(T, 1)));
        curves.lower.push_back(curves.lower_coefficient * logT);
        curves.upper.push_back(curves.upper_coefficient * logT);
    }
    return curves;
}

}  // namespace mpmab
