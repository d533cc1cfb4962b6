#include "mpmab/policies/orchexplore.hpp"

#include <algorithm>
#include <limits>

#include "mpmab/oracle.hpp"

namespace mpmab {

OrchExplore::OrchExplore(const PolicyContext& ctx, const PolicyParams& params)
    : num_arms_(ctx.num_arms),
      plays_(ctx.plays),
      horizon_(ctx.horizon),
      reward_kind_(ctx.reward_kind),
      variance_(ctx.variance),
      width_(params.width),
      priority_bonus_(ctx.reward_kind == RewardKind::Bernoulli ? 1.0 : 5.0),
      known_capacity_(!ctx.known_capacities.empty()),
      rng_(ctx.seed, ctx.replication, /*purpose=*/1) {
    delta_ = params.delta_override > 0.0
                 ? params.delta_override
                 : 2.0 / static_cast<double>(std::max<std::int64_t>(horizon_, 1));
    // The Hoeffding interval holds per time slot; a union bound over the
    // horizon makes it anytime-comparable.
    if (width_ == WidthKind::Hfd) delta_ /= static_cast<double>(std::max<std::int64_t>(horizon_, 1));

    stats_.assign(static_cast<std::size_t>(num_arms_), make_arm_statistics(plays_));
    if (known_capacity_) {
        for (int k = 0; k < num_arms_; ++k) {
            stats_[static_cast<std::size_t>(k)].m_lower = ctx.known_capacities[static_cast<std::size_t>(k)];
            stats_[static_cast<std::size_t>(k)].m_upper = ctx.known_capacities[static_cast<std::size_t>(k)];
        }
    }
}

Action OrchExplore::select_action(std::int64_t t) {
    const bool individual = (t % 2 == 1) || pue_set_.empty();

    Action action;
    action.counts.assign(static_cast<std::size_t>(num_arms_), 0);

    std::vector<double> values(static_cast<std::size_t>(num_arms_));
    std::vector<int> caps(static_cast<std::size_t>(num_arms_));

    if (individual) {
        last_was_united_ = false;
        for (int k = 0; k < num_arms_; ++k) {
            values[static_cast<std::size_t>(k)] = stats_[static_cast<std::size_t>(k)].mu_hat;
            caps[static_cast<std::size_t>(k)] = stats_[static_cast<std::size_t>(k)].m_lower;
        }

        // Greedy fill by empirical mean over capacity lower bounds; the last
        // arm to receive plays is the empirical least favored optimal arm.
        optimal_set_.clear();
        least_favored_ = -1;
        int remaining = plays_;
        for (int k : descending_order(values)) {
            const int take = std::min(remaining, caps[static_cast<std::size_t>(k)]);
            action.counts[static_cast<std::size_t>(k)] = take;
            optimal_set_.push_back(k);
            least_favored_ = k;
            remaining -= take;
            if (remaining == 0) break;
        }

        // Suboptimal arms whose optimistic index still reaches the least
        // favored arm's mean deserve an occasional single-play look.
        const double threshold = stats_[static_cast<std::size_t>(least_favored_)].mu_hat;
        std::vector<int> explore_candidates;
        for (int k = 0; k < num_arms_; ++k) {
            if (action.counts[static_cast<std::size_t>(k)] > 0) continue;
            const ArmStatistics& s = stats_[static_cast<std::size_t>(k)];
            const double index =
                s.ie_count == 0
                    ? std::numeric_limits<double>::infinity()
                    : klucb_index(s.mu_hat, s.ie_count, t, reward_kind_, variance_);
            if (index >= threshold) explore_candidates.push_back(k);
        }
        if (!explore_candidates.empty() && rng_.bernoulli(0.5)) {
            const int picked = explore_candidates[static_cast<std::size_t>(
                rng_.uniform_below(explore_candidates.size()))];
            action.counts[static_cast<std::size_t>(least_favored_)] -= 1;
            action.counts[static_cast<std::size_t>(picked)] = 1;
        }
    } else {
        last_was_united_ = true;
        for (int k = 0; k < num_arms_; ++k) {
            values[static_cast<std::size_t>(k)] = stats_[static_cast<std::size_t>(k)].mu_hat;
            caps[static_cast<std::size_t>(k)] = stats_[static_cast<std::size_t>(k)].m_upper;
        }
        for (int k : pue_set_) values[static_cast<std::size_t>(k)] += priority_bonus_;
        action = greedy_oracle(values, caps, plays_);
    }
    return action;
}

void OrchExplore::observe(std::int64_t /*t*/, const Feedback& feedback) {
    for (const auto& obs : feedback.observations) {
        ArmStatistics& s = stats_[static_cast<std::size_t>(obs.arm)];
        if (!last_was_united_) {
            // Effective individual exploration: at most the capacity lower
            // bound, so the per-play reward is a clean per-load sample.
            if (obs.plays <= s.m_lower)
                s.add_ie_sample(obs.reward / static_cast<double>(obs.plays));
        } else {
            if (obs.plays >= s.m_upper) s.add_ue_sample(obs.reward);
        }
        s = update_capacity_bounds(s, delta_, plays_, width_);
    }
    refresh_pue_set();
}

void OrchExplore::refresh_pue_set() {
    pue_set_.clear();
    for (int k : optimal_set_) {
        if (k == least_favored_) continue;
        if (!stats_[static_cast<std::size_t>(k)].capacity_pinned()) pue_set_.push_back(k);
    }
}

}  // namespace mpmab
