#pragma once

#include <vector>

#include "mpmab/policy.hpp"
#include "mpmab/rng.hpp"

namespace mpmab {

// Orchestrative exploration: alternates parsimonious individual exploration
// (odd slots, and whenever no arm awaits united exploration) with
// parsimonious united exploration (even slots while some empirically optimal
// arm still has an unsettled capacity).
//
// With known capacities the bounds are pinned up front, the united phase
// never triggers, and what remains is KL-UCB-guided mean learning.
class OrchExplore : public Policy {
public:
    OrchExplore(const PolicyContext& ctx, const PolicyParams& params);

    Action select_action(std::int64_t t) override;
    void observe(std::int64_t t, const Feedback& feedback) override;
    std::string_view name() const override { return known_capacity_ ? "orchexplore_kc" : "orchexplore"; }

    // Introspection for tests and diagnostics.
    const std::vector<ArmStatistics>& statistics() const { return stats_; }
    const std::vector<int>& empirical_optimal_set() const { return optimal_set_; }
    int least_favored_arm() const { return least_favored_; }
    const std::vector<int>& pue_set() const { return pue_set_; }
    bool last_phase_was_united() const { return last_was_united_; }

private:
    void refresh_pue_set();

    int num_arms_;
    int plays_;
    std::int64_t horizon_;
    RewardKind reward_kind_;
    double variance_;
    double delta_;
    WidthKind width_;
    double priority_bonus_;  // M: lifts PUE arms above every empirical mean
    bool known_capacity_;

    RandomStream rng_;
    std::vector<ArmStatistics> stats_;
    std::vector<int> optimal_set_;  // S_t from the latest individual step
    int least_favored_ = -1;        // L_t, the arm holding the remainder plays
    std::vector<int> pue_set_;      // Y_t
    bool last_was_united_ = false;
};

}  // namespace mpmab
