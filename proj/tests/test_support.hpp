#pragma once

#include <vector>

#include "mpmab/env.hpp"
#include "mpmab/rng.hpp"

namespace mpmab::test {

inline Environment bernoulli_env(const std::vector<double>& means, const std::vector<int>& caps,
                                 int plays, std::uint64_t seed = 1) {
    std::vector<ArmSpec> arms;
    for (std::size_t i = 0; i < means.size(); ++i)
        arms.push_back({means[i], caps[i], RewardKind::Bernoulli, 0.0});
    return Environment::create(std::move(arms), plays, seed);
}

inline Environment gaussian_env(const std::vector<double>& means, const std::vector<int>& caps,
                                int plays, double variance, std::uint64_t seed = 1) {
    std::vector<ArmSpec> arms;
    for (std::size_t i = 0; i < means.size(); ++i)
        arms.push_back({means[i], caps[i], RewardKind::Gaussian, variance});
    return Environment::create(std::move(arms), plays, seed);
}

// Exhaustive maximum of the expected reward over the whole action space; the
// independent check for the greedy allocator.
inline double brute_force_best_value(const Environment& env) {
    double best = -1.0;
    for (const Action& action : enumerate_actions(env.num_arms(), env.plays()))
        best = std::max(best, expected_reward(env, action));
    return best;
}

// Random feasible instance with distinct means, small enough to enumerate.
inline Environment random_small_env(RandomStream& rng) {
    const int K = 2 + static_cast<int>(rng.uniform_below(4));  // 2..5 arms
    const int N = 1 + static_cast<int>(rng.uniform_below(
                          static_cast<std::uint64_t>(std::max(1, K - 1))));  // 1..K-1
    for (;;) {
        std::vector<double> means;
        std::vector<int> caps;
        int total = 0;
        for (int k = 0; k < K; ++k) {
            means.push_back(0.05 + 0.9 * rng.uniform01());
            const int c = 1 + static_cast<int>(rng.uniform_below(
                                  static_cast<std::uint64_t>(std::min(4, N))));
            caps.push_back(c);
            total += c;
        }
        bool distinct = true;
        for (int i = 0; i < K && distinct; ++i)
            for (int j = i + 1; j < K; ++j)
                if (means[static_cast<std::size_t>(i)] == means[static_cast<std::size_t>(j)])
                    distinct = false;
        if (total < N || !distinct) continue;
        return bernoulli_env(means, caps, N, rng.next_u64());
    }
}

}  // namespace mpmab::test
