#include "mpmab/policies/mpsesa.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "mpmab/oracle.hpp"

namespace mpmab {

namespace {
// Lifts candidate arms above everything else when filling leftover plays.
constexpr double kCandidateBoost = 1e6;
}  // namespace

MpSeSa::MpSeSa(const PolicyContext& ctx, const PolicyParams& params, Mode mode)
    : mode_(mode),
      num_arms_(ctx.num_arms),
      plays_(ctx.plays),
      horizon_(std::max<std::int64_t>(ctx.horizon, 1)),
      gamma_(params.gamma),
      width_(params.width),
      known_caps_(ctx.known_capacities) {
    delta_ = params.delta_override > 0.0
                 ? params.delta_override
                 : 2.0 * params.xi / static_cast<double>(horizon_);
    if (width_ == WidthKind::Hfd) delta_ /= static_cast<double>(horizon_);
    delta_ = std::min(delta_, 0.5);

    stats_.assign(static_cast<std::size_t>(num_arms_), make_arm_statistics(plays_));
    candidates_.resize(static_cast<std::size_t>(num_arms_));
    for (int k = 0; k < num_arms_; ++k) candidates_[static_cast<std::size_t>(k)] = k;
    expected_size_ = plays_;
}

std::string_view MpSeSa::name() const {
    switch (mode_) {
        case Mode::Adaptive: return "mpsesa";
        case Mode::KnownCapacity: return "mpsesa_kc";
        case Mode::UnitCapacity: return "mpse";
    }
    return "mpsesa";
}

std::vector<int> MpSeSa::eliminate(const std::vector<int>& candidates,
                                   const std::vector<double>& means, double reference_mean,
                                   double gamma, double radius) {
    std::vector<int> kept;
    kept.reserve(candidates.size());
    for (int k : candidates) {
        if (means[static_cast<std::size_t>(k)] > reference_mean - gamma * radius)
            kept.push_back(k);
    }
    return kept;
}

std::vector<int> MpSeSa::capacity_view() const {
    std::vector<int> caps(static_cast<std::size_t>(num_arms_), 1);
    for (int k = 0; k < num_arms_; ++k) {
        switch (mode_) {
            case Mode::Adaptive:
                caps[static_cast<std::size_t>(k)] = stats_[static_cast<std::size_t>(k)].m_lower;
                break;
            case Mode::KnownCapacity:
                caps[static_cast<std::size_t>(k)] = known_caps_[static_cast<std::size_t>(k)];
                break;
            case Mode::UnitCapacity:
                caps[static_cast<std::size_t>(k)] = 1;
                break;
        }
    }
    return caps;
}

Action MpSeSa::fill_remainder(Action action, const std::vector<char>& occupied) const {
    const int assigned = action.total();
    const int leftover = plays_ - assigned;
    if (leftover == 0) return action;

    // Spare plays go to the best-looking arms outside the explored subset,
    // candidates first; their observations are not used for estimates.
    std::vector<double> values(static_cast<std::size_t>(num_arms_));
    std::vector<char> allowed(static_cast<std::size_t>(num_arms_), 1);
    for (int k = 0; k < num_arms_; ++k) {
        values[static_cast<std::size_t>(k)] = stats_[static_cast<std::size_t>(k)].mu_hat;
        if (occupied[static_cast<std::size_t>(k)]) allowed[static_cast<std::size_t>(k)] = 0;
    }
    for (int k : candidates_) values[static_cast<std::size_t>(k)] += kCandidateBoost;
    const Action extra = greedy_oracle_masked(values, capacity_view(), leftover, allowed);
    for (int k = 0; k < num_arms_; ++k)
        action.counts[static_cast<std::size_t>(k)] += extra.counts[static_cast<std::size_t>(k)];
    return action;
}

void MpSeSa::plan() {
    std::vector<double> means(static_cast<std::size_t>(num_arms_));
    for (int k = 0; k < num_arms_; ++k)
        means[static_cast<std::size_t>(k)] = stats_[static_cast<std::size_t>(k)].mu_hat;

    // Descending order of the candidate means.
    std::vector<int> order = candidates_;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return means[static_cast<std::size_t>(a)] > means[static_cast<std::size_t>(b)];
    });

    const std::vector<int> caps = capacity_view();
    if (mode_ == Mode::UnitCapacity) {
        expected_size_ = std::min(plays_, static_cast<int>(candidates_.size()));
    } else {
        int covered = 0;
        expected_size_ = static_cast<int>(candidates_.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            covered += caps[static_cast<std::size_t>(order[i])];
            if (covered >= plays_) {
                expected_size_ = static_cast<int>(i) + 1;
                break;
            }
        }
    }

    const int set_size = static_cast<int>(candidates_.size());
    if (expected_size_ < set_size) {
        if (ie_rounds_ >= 1) {
            const double reference = means[static_cast<std::size_t>(
                order[static_cast<std::size_t>(expected_size_ - 1)])];
            const double radius = elimination_radius(std::min(ie_rounds_, horizon_), horizon_);
            candidates_ = eliminate(candidates_, means, reference, gamma_, radius);
        }

        // One exploration round: every candidate gets a single play across
        // ceil(|J|/N) slots.
        const int count = static_cast<int>(candidates_.size());
        const int groups = (count + plays_ - 1) / plays_;
        const int base = count / groups;
        const int bigger = count % groups;
        std::size_t cursor = 0;
        for (int g = 0; g < groups; ++g) {
            const int size = base + (g < bigger ? 1 : 0);
            PendingSlot slot;
            slot.role = PendingSlot::Role::ExploreSubset;
            slot.action.counts.assign(static_cast<std::size_t>(num_arms_), 0);
            std::vector<char> occupied(static_cast<std::size_t>(num_arms_), 0);
            for (int i = 0; i < size; ++i) {
                const int arm = candidates_[cursor++];
                slot.action.counts[static_cast<std::size_t>(arm)] = 1;
                slot.sampled_arms.push_back(arm);
                occupied[static_cast<std::size_t>(arm)] = 1;
            }
            slot.action = fill_remainder(std::move(slot.action), occupied);
            slot.closes_round = (g == groups - 1);
            queue_.push_back(std::move(slot));
        }
        return;
    }

    // Exploitation: top arms receive their capacity view, the last one the
    // remainder; every candidate yields one more per-load sample.
    PendingSlot slot;
    slot.role = PendingSlot::Role::Exploit;
    slot.action.counts.assign(static_cast<std::size_t>(num_arms_), 0);
    int remaining = plays_;
    for (int i = 0; i < expected_size_; ++i) {
        const int arm = order[static_cast<std::size_t>(i)];
        const int take = i + 1 < expected_size_
                             ? std::min(caps[static_cast<std::size_t>(arm)], remaining)
                             : remaining;
        slot.action.counts[static_cast<std::size_t>(arm)] = take;
        slot.sampled_arms.push_back(arm);
        slot.exploit_plays.push_back(take);
        remaining -= take;
    }
    assert(remaining == 0);
    slot.closes_round = true;
    queue_.push_back(std::move(slot));

    if (mode_ == Mode::Adaptive) {
        std::vector<int> open;
        for (int k : candidates_)
            if (!stats_[static_cast<std::size_t>(k)].capacity_pinned()) open.push_back(k);
        for (std::size_t i = 0; i < open.size(); ++i) {
            PendingSlot ue;
            ue.role = PendingSlot::Role::UnitedExplore;
            ue.action.counts.assign(static_cast<std::size_t>(num_arms_), 0);
            ue.action.counts[static_cast<std::size_t>(open[i])] = plays_;
            ue.united_arm = open[i];
            ue.closes_round = (i + 1 == open.size());
            if (ue.closes_round) ue.bounds_refresh = open;
            queue_.push_back(std::move(ue));
        }
    }
}

Action MpSeSa::select_action(std::int64_t /*t*/) {
    if (queue_.empty()) plan();
    current_ = std::move(queue_.front());
    queue_.pop_front();
    return current_.action;
}

void MpSeSa::observe(std::int64_t /*t*/, const Feedback& feedback) {
    switch (current_.role) {
        case PendingSlot::Role::ExploreSubset: {
            for (const auto& obs : feedback.observations) {
                const auto it = std::find(current_.sampled_arms.begin(),
                                          current_.sampled_arms.end(), obs.arm);
                if (it == current_.sampled_arms.end()) continue;
                stats_[static_cast<std::size_t>(obs.arm)].add_ie_sample(obs.reward);
            }
            if (current_.closes_round) ++ie_rounds_;
            break;
        }
        case PendingSlot::Role::Exploit: {
            for (const auto& obs : feedback.observations) {
                const auto it = std::find(current_.sampled_arms.begin(),
                                          current_.sampled_arms.end(), obs.arm);
                if (it == current_.sampled_arms.end()) continue;
                stats_[static_cast<std::size_t>(obs.arm)].add_ie_sample(
                    obs.reward / static_cast<double>(obs.plays));
            }
            ++ie_rounds_;
            break;
        }
        case PendingSlot::Role::UnitedExplore: {
            for (const auto& obs : feedback.observations) {
                if (obs.arm != current_.united_arm) continue;
                stats_[static_cast<std::size_t>(obs.arm)].add_ue_sample(obs.reward);
            }
            if (current_.closes_round) {
                ++ue_rounds_;
                for (int k : current_.bounds_refresh) {
                    ArmStatistics& s = stats_[static_cast<std::size_t>(k)];
                    s = update_capacity_bounds(s, delta_, plays_, width_);
                }
            }
            break;
        }
    }
}

}  // namespace mpmab
