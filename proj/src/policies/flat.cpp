#include "mpmab/policies/flat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpmab/capest.hpp"

namespace mpmab {

FlatPolicyBase::FlatPolicyBase(const PolicyContext& ctx, const PolicyParams& params)
    : plays_(ctx.plays),
      horizon_(std::max<std::int64_t>(ctx.horizon, 1)),
      rng_(ctx.seed, ctx.replication, /*purpose=*/1) {
    const std::uint64_t size = action_space_size(ctx.num_arms, ctx.plays);
    if (size > params.action_space_cap)
        throw PolicyInfeasible("enumerated action space has " + std::to_string(size) +
                               " allocations, above the cap of " +
                               std::to_string(params.action_space_cap));
    actions_ = enumerate_actions(ctx.num_arms, ctx.plays);
}

void FlatPolicyBase::observe(std::int64_t t, const Feedback& feedback) {
    double total = 0.0;
    for (const auto& obs : feedback.observations) total += obs.reward;
    record(total / static_cast<double>(plays_), t);
}

UcbFlat::UcbFlat(const PolicyContext& ctx, const PolicyParams& params)
    : FlatPolicyBase(ctx, params) {
    mean_.assign(actions_.size(), 0.0);
    count_.assign(actions_.size(), 0);
}

Action UcbFlat::select_action(std::int64_t t) {
    if (unpulled_cursor_ < actions_.size()) {
        chosen_ = unpulled_cursor_++;
        return actions_[chosen_];
    }
    const double bonus_num = 2.0 * std::log(static_cast<double>(std::max<std::int64_t>(t, 2)));
    std::size_t best = 0;
    double best_score = -1e300;
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        const double score = mean_[i] + std::sqrt(bonus_num / static_cast<double>(count_[i]));
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    chosen_ = best;
    return actions_[chosen_];
}

void UcbFlat::record(double normalized_reward, std::int64_t /*t*/) {
    mean_[chosen_] = (mean_[chosen_] * static_cast<double>(count_[chosen_]) + normalized_reward) /
                     static_cast<double>(count_[chosen_] + 1);
    ++count_[chosen_];
    ++total_pulls_;
}

TsFlat::TsFlat(const PolicyContext& ctx, const PolicyParams& params)
    : FlatPolicyBase(ctx, params) {
    ones_.assign(actions_.size(), 0);
    zeros_.assign(actions_.size(), 0);
}

Action TsFlat::select_action(std::int64_t /*t*/) {
    std::size_t best = 0;
    double best_draw = -1.0;
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        const double draw =
            rng_.beta(1.0 + static_cast<double>(ones_[i]), 1.0 + static_cast<double>(zeros_[i]));
        if (draw > best_draw) {
            best_draw = draw;
            best = i;
        }
    }
    chosen_ = best;
    return actions_[chosen_];
}

void TsFlat::record(double normalized_reward, std::int64_t /*t*/) {
    // Binarized update for bounded (clamped) payoffs.
    const double p = std::clamp(normalized_reward, 0.0, 1.0);
    if (rng_.bernoulli(p))
        ++ones_[chosen_];
    else
        ++zeros_[chosen_];
}

SeFlat::SeFlat(const PolicyContext& ctx, const PolicyParams& params)
    : FlatPolicyBase(ctx, params), gamma_(params.gamma) {
    active_.resize(actions_.size());
    for (std::size_t i = 0; i < actions_.size(); ++i) active_[i] = static_cast<std::uint32_t>(i);
    mean_.assign(actions_.size(), 0.0);
    count_.assign(actions_.size(), 0);
}

Action SeFlat::select_action(std::int64_t /*t*/) {
    if (cursor_ >= active_.size()) cursor_ = 0;
    chosen_ = active_[cursor_++];
    return actions_[chosen_];
}

void SeFlat::record(double normalized_reward, std::int64_t /*t*/) {
    mean_[chosen_] = (mean_[chosen_] * static_cast<double>(count_[chosen_]) + normalized_reward) /
                     static_cast<double>(count_[chosen_] + 1);
    ++count_[chosen_];

    if (cursor_ < active_.size()) return;
    // A full pass over the surviving allocations closes one round.
    ++rounds_;
    if (active_.size() <= 1) return;
    double best = -1e300;
    for (std::uint32_t i : active_) best = std::max(best, mean_[i]);
    const double radius = elimination_radius(std::min(rounds_, horizon_), horizon_);
    std::vector<std::uint32_t> kept;
    kept.reserve(active_.size());
    for (std::uint32_t i : active_)
        if (mean_[i] > best - 2.0 * gamma_ * radius) kept.push_back(i);
    if (!kept.empty()) active_ = std::move(kept);
    cursor_ = 0;
}

}  // namespace mpmab
