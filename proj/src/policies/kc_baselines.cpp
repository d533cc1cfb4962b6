#include "mpmab/policies/kc_baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mpmab/capest.hpp"
#include "mpmab/oracle.hpp"

namespace mpmab {

KnownCapacityIndexPolicy::KnownCapacityIndexPolicy(const PolicyContext& ctx,
                                                   const PolicyParams& /*params*/)
    : num_arms_(ctx.num_arms),
      plays_(ctx.plays),
      horizon_(std::max<std::int64_t>(ctx.horizon, 1)),
      reward_kind_(ctx.reward_kind),
      variance_(ctx.variance),
      capacities_(ctx.known_capacities),
      rng_(ctx.seed, ctx.replication, /*purpose=*/1) {
    if (static_cast<int>(capacities_.size()) != num_arms_)
        throw std::invalid_argument("known-capacity policy needs the true capacities");
    mu_hat_.assign(static_cast<std::size_t>(num_arms_), 0.0);
    pull_count_.assign(static_cast<std::size_t>(num_arms_), 0);
    success_.assign(static_cast<std::size_t>(num_arms_), 0.0);
}

Action KnownCapacityIndexPolicy::play_scores(const std::vector<double>& scores) const {
    return greedy_oracle(scores, capacities_, plays_);
}

void KnownCapacityIndexPolicy::observe(std::int64_t t, const Feedback& feedback) {
    for (const auto& obs : feedback.observations) {
        const std::size_t k = static_cast<std::size_t>(obs.arm);
        const int utilized = std::min(obs.plays, capacities_[k]);
        const double per_load = obs.reward / static_cast<double>(utilized);
        mu_hat_[k] = (mu_hat_[k] * static_cast<double>(pull_count_[k]) + per_load) /
                     static_cast<double>(pull_count_[k] + 1);
        ++pull_count_[k];
        success_[k] += per_load;
    }
    after_update(t);
}

Action KlUcbKc::select_action(std::int64_t t) {
    std::vector<double> scores(static_cast<std::size_t>(num_arms_));
    for (int k = 0; k < num_arms_; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        scores[i] = pull_count_[i] == 0
                        ? std::numeric_limits<double>::infinity()
                        : klucb_index(mu_hat_[i], pull_count_[i], t, reward_kind_, variance_);
    }
    return play_scores(scores);
}

ThompsonKc::ThompsonKc(const PolicyContext& ctx, const PolicyParams& params)
    : KnownCapacityIndexPolicy(ctx, params) {}

Action ThompsonKc::select_action(std::int64_t /*t*/) {
    std::vector<double> scores(static_cast<std::size_t>(num_arms_));
    for (int k = 0; k < num_arms_; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        if (reward_kind_ == RewardKind::Bernoulli) {
            const double ones = success_[i];
            const double zeros = static_cast<double>(pull_count_[i]) - ones;
            scores[i] = rng_.beta(1.0 + ones, 1.0 + zeros);
        } else {
            // Normal prior N(1/2, 1), known observation variance.
            const double n = static_cast<double>(pull_count_[i]);
            const double precision = 1.0 + n / variance_;
            const double mean = (0.5 + success_[i] / variance_) / precision;
            scores[i] = rng_.normal(mean, 1.0 / precision);
        }
    }
    return play_scores(scores);
}

SeKc::SeKc(const PolicyContext& ctx, const PolicyParams& params)
    : KnownCapacityIndexPolicy(ctx, params), gamma_(params.gamma) {
    active_.assign(static_cast<std::size_t>(num_arms_), 1);
}

Action SeKc::select_action(std::int64_t /*t*/) {
    // How many of the best active arms the capacities need to cover N plays.
    std::vector<int> order;
    for (int k = 0; k < num_arms_; ++k)
        if (active_[static_cast<std::size_t>(k)]) order.push_back(k);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return mu_hat_[static_cast<std::size_t>(a)] > mu_hat_[static_cast<std::size_t>(b)];
    });
    int covered = 0;
    std::size_t needed = order.size();
    for (std::size_t i = 0; i < order.size(); ++i) {
        covered += capacities_[static_cast<std::size_t>(order[i])];
        if (covered >= plays_) {
            needed = i + 1;
            break;
        }
    }

    std::vector<double> scores(static_cast<std::size_t>(num_arms_),
                               -std::numeric_limits<double>::infinity());
    if (order.size() > needed) {
        // Exploration: steer plays toward the least-sampled candidates.
        for (int k : order)
            scores[static_cast<std::size_t>(k)] =
                -static_cast<double>(pull_count_[static_cast<std::size_t>(k)]);
    } else {
        for (int k : order) scores[static_cast<std::size_t>(k)] = mu_hat_[static_cast<std::size_t>(k)];
    }
    return play_scores(scores);
}

void SeKc::after_update(std::int64_t /*t*/) {
    std::vector<int> order;
    for (int k = 0; k < num_arms_; ++k)
        if (active_[static_cast<std::size_t>(k)]) order.push_back(k);
    if (order.size() <= 1) return;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return mu_hat_[static_cast<std::size_t>(a)] > mu_hat_[static_cast<std::size_t>(b)];
    });
    int covered = 0;
    std::size_t needed = order.size();
    for (std::size_t i = 0; i < order.size(); ++i) {
        covered += capacities_[static_cast<std::size_t>(order[i])];
        if (covered >= plays_) {
            needed = i + 1;
            break;
        }
    }
    if (needed >= order.size()) return;

    const int pivot = order[needed - 1];
    const std::int64_t pivot_n = pull_count_[static_cast<std::size_t>(pivot)];
    for (std::size_t i = needed; i < order.size(); ++i) {
        const int k = order[i];
        const std::int64_t n = std::min(pull_count_[static_cast<std::size_t>(k)], pivot_n);
        if (n < 1) continue;
        const double radius = elimination_radius(std::min(n, horizon_), horizon_);
        if (mu_hat_[static_cast<std::size_t>(k)] <=
            mu_hat_[static_cast<std::size_t>(pivot)] - gamma_ * radius)
            active_[static_cast<std::size_t>(k)] = 0;
    }
}

OptimalPolicy::OptimalPolicy(const PolicyContext& ctx) {
    if (ctx.known_means.empty() || ctx.known_capacities.empty())
        throw std::invalid_argument("optimal policy needs the true means and capacities");
    action_ = greedy_oracle(ctx.known_means, ctx.known_capacities, ctx.plays);
}

}  // namespace mpmab
