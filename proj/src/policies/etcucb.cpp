#include "mpmab/policies/etcucb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpmab/oracle.hpp"

namespace mpmab {

EtcUcb::EtcUcb(const PolicyContext& ctx, const PolicyParams& params)
    : num_arms_(ctx.num_arms),
      plays_(ctx.plays),
      horizon_(std::max<std::int64_t>(ctx.horizon, 1)),
      width_(params.width) {
    delta_ = params.delta_override > 0.0 ? params.delta_override
                                         : 2.0 / static_cast<double>(horizon_);
    if (width_ == WidthKind::Hfd) delta_ /= static_cast<double>(horizon_);
    delta_ = std::min(delta_, 0.5);

    stats_.assign(static_cast<std::size_t>(num_arms_), make_arm_statistics(plays_));
    pulls_.assign(static_cast<std::size_t>(num_arms_), 0);
}

void EtcUcb::plan_etc_round(const std::vector<int>& open) {
    // One individual-exploration round over the open arms...
    const int count = static_cast<int>(open.size());
    const int groups = (count + plays_ - 1) / plays_;
    const int base = count / groups;
    const int bigger = count % groups;
    std::size_t cursor = 0;
    for (int g = 0; g < groups; ++g) {
        const int size = base + (g < bigger ? 1 : 0);
        PendingSlot slot;
        slot.role = PendingSlot::Role::ExploreSubset;
        slot.action.counts.assign(static_cast<std::size_t>(num_arms_), 0);
        std::vector<char> allowed(static_cast<std::size_t>(num_arms_), 1);
        for (int i = 0; i < size; ++i) {
            const int arm = open[cursor++];
            slot.action.counts[static_cast<std::size_t>(arm)] = 1;
            slot.sampled_arms.push_back(arm);
            allowed[static_cast<std::size_t>(arm)] = 0;
        }
        const int leftover = plays_ - size;
        if (leftover > 0) {
            std::vector<double> values(static_cast<std::size_t>(num_arms_));
            std::vector<int> caps(static_cast<std::size_t>(num_arms_));
            for (int k = 0; k < num_arms_; ++k) {
                values[static_cast<std::size_t>(k)] = stats_[static_cast<std::size_t>(k)].mu_hat;
                caps[static_cast<std::size_t>(k)] = stats_[static_cast<std::size_t>(k)].m_lower;
            }
            const Action extra = greedy_oracle_masked(values, caps, leftover, allowed);
            for (int k = 0; k < num_arms_; ++k)
                slot.action.counts[static_cast<std::size_t>(k)] +=
                    extra.counts[static_cast<std::size_t>(k)];
        }
        slot.closes_ie_round = (g == groups - 1);
        queue_.push_back(std::move(slot));
    }

    // ...then one united-exploration round, all plays on each open arm.
    for (std::size_t i = 0; i < open.size(); ++i) {
        PendingSlot slot;
        slot.role = PendingSlot::Role::UnitedExplore;
        slot.action.counts.assign(static_cast<std::size_t>(num_arms_), 0);
        slot.action.counts[static_cast<std::size_t>(open[i])] = plays_;
        slot.united_arm = open[i];
        slot.closes_ue_round = (i + 1 == open.size());
        if (slot.closes_ue_round) slot.bounds_refresh = open;
        queue_.push_back(std::move(slot));
    }
}

Action EtcUcb::commit_phase_action(std::int64_t t) {
    std::vector<double> index(static_cast<std::size_t>(num_arms_));
    const double logt = std::log(static_cast<double>(std::max<std::int64_t>(t, 2)));
    for (int k = 0; k < num_arms_; ++k) {
        const std::int64_t n = pulls_[static_cast<std::size_t>(k)];
        index[static_cast<std::size_t>(k)] =
            n == 0 ? std::numeric_limits<double>::infinity()
                   : stats_[static_cast<std::size_t>(k)].mu_hat +
                         std::sqrt(2.0 * logt / static_cast<double>(n));
    }

    const std::vector<int> order = descending_order(index);
    Action action;
    action.counts.assign(static_cast<std::size_t>(num_arms_), 0);
    commit_assignment_.assign(static_cast<std::size_t>(num_arms_), 0);
    int remaining = plays_;
    for (std::size_t i = 0; i < order.size() && remaining > 0; ++i) {
        const int arm = order[i];
        const int cap = committed_caps_[static_cast<std::size_t>(arm)];
        const int take = i + 1 == order.size() ? remaining : std::min(cap, remaining);
        action.counts[static_cast<std::size_t>(arm)] = take;
        commit_assignment_[static_cast<std::size_t>(arm)] = take;
        remaining -= take;
    }
    return action;
}

Action EtcUcb::select_action(std::int64_t t) {
    if (!committed_ && queue_.empty()) {
        std::vector<int> open;
        for (int k = 0; k < num_arms_; ++k)
            if (!stats_[static_cast<std::size_t>(k)].capacity_pinned()) open.push_back(k);
        if (open.empty()) {
            committed_ = true;
            committed_caps_.assign(static_cast<std::size_t>(num_arms_), 1);
            for (int k = 0; k < num_arms_; ++k) {
                const ArmStatistics& s = stats_[static_cast<std::size_t>(k)];
                int cap = s.m_lower;
                if (s.mu_hat > 0.0) cap = static_cast<int>(std::lround(s.nu_hat / s.mu_hat));
                committed_caps_[static_cast<std::size_t>(k)] = std::clamp(cap, 1, plays_);
                pulls_[static_cast<std::size_t>(k)] = s.ie_count;
            }
        } else {
            plan_etc_round(open);
        }
    }

    if (committed_ && queue_.empty()) {
        current_is_commit_ = true;
        return commit_phase_action(t);
    }
    current_is_commit_ = false;
    current_ = std::move(queue_.front());
    queue_.pop_front();
    return current_.action;
}

void EtcUcb::observe(std::int64_t /*t*/, const Feedback& feedback) {
    if (current_is_commit_) {
        for (const auto& obs : feedback.observations) {
            if (commit_assignment_[static_cast<std::size_t>(obs.arm)] == 0) continue;
            stats_[static_cast<std::size_t>(obs.arm)].add_ie_sample(
                obs.reward / static_cast<double>(obs.plays));
            ++pulls_[static_cast<std::size_t>(obs.arm)];
        }
        return;
    }

    switch (current_.role) {
        case PendingSlot::Role::ExploreSubset:
            for (const auto& obs : feedback.observations) {
                const auto it = std::find(current_.sampled_arms.begin(),
                                          current_.sampled_arms.end(), obs.arm);
                if (it == current_.sampled_arms.end()) continue;
                stats_[static_cast<std::size_t>(obs.arm)].add_ie_sample(obs.reward);
            }
            if (current_.closes_ie_round) ++ie_rounds_;
            break;
        case PendingSlot::Role::UnitedExplore:
            for (const auto& obs : feedback.observations) {
                if (obs.arm != current_.united_arm) continue;
                stats_[static_cast<std::size_t>(obs.arm)].add_ue_sample(obs.reward);
            }
            if (current_.closes_ue_round) {
                ++ue_rounds_;
                for (int k : current_.bounds_refresh) {
                    ArmStatistics& s = stats_[static_cast<std::size_t>(k)];
                    s = update_capacity_bounds(s, delta_, plays_, width_);
                }
            }
            break;
    }
}

}  // namespace mpmab
