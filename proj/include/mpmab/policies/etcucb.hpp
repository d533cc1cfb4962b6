#pragma once

#include <deque>
#include <vector>

#include "mpmab/policy.hpp"

namespace mpmab {

// Two-phase baseline: an explore-then-commit phase runs individual and
// united exploration rounds over every arm whose capacity bounds are still
// open; once all bounds pin, capacities are committed to round(nu/mu) and a
// UCB policy over the per-load means takes over.
class EtcUcb : public Policy {
public:
    EtcUcb(const PolicyContext& ctx, const PolicyParams& params);

    Action select_action(std::int64_t t) override;
    void observe(std::int64_t t, const Feedback& feedback) override;
    std::string_view name() const override { return "etcucb"; }

    bool in_commit_phase() const { return committed_; }
    const std::vector<int>& committed_capacities() const { return committed_caps_; }
    const std::vector<ArmStatistics>& statistics() const { return stats_; }

private:
    struct PendingSlot {
        enum class Role { ExploreSubset, UnitedExplore } role = Role::ExploreSubset;
        Action action;
        std::vector<int> sampled_arms;
        int united_arm = -1;
        bool closes_ie_round = false;
        bool closes_ue_round = false;
        std::vector<int> bounds_refresh;
    };

    void plan_etc_round(const std::vector<int>& open);
    Action commit_phase_action(std::int64_t t);

    int num_arms_;
    int plays_;
    std::int64_t horizon_;
    double delta_;
    WidthKind width_;

    std::vector<ArmStatistics> stats_;
    std::int64_t ie_rounds_ = 0;
    std::int64_t ue_rounds_ = 0;

    bool committed_ = false;
    std::vector<int> committed_caps_;
    std::vector<std::int64_t> pulls_;  // per-arm sample counts in the commit phase

    std::deque<PendingSlot> queue_;
    PendingSlot current_;
    bool current_is_commit_ = false;
    std::vector<int> commit_assignment_;
};

}  // namespace mpmab
