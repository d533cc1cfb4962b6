#pragma once

#include <deque>
#include <vector>

#include "mpmab/policy.hpp"

namespace mpmab {

// Successive elimination over shareable arms. The candidate set shrinks by
// an elimination radius while an expected set size tracks how many top arms
// the capacity lower bounds need to cover all plays. Individual exploration
// rounds run while the candidate set is too large; otherwise the policy
// exploits and, in the adaptive mode, unitedly explores arms whose
// capacities are still open.
//
// Modes:
//   Adaptive       - learns capacities through united exploration
//   KnownCapacity  - true capacities supplied, no united exploration
//   UnitCapacity   - every capacity treated as one (the N-for-size variant)
class MpSeSa : public Policy {
public:
    enum class Mode { Adaptive, KnownCapacity, UnitCapacity };

    MpSeSa(const PolicyContext& ctx, const PolicyParams& params, Mode mode);

    Action select_action(std::int64_t t) override;
    void observe(std::int64_t t, const Feedback& feedback) override;
    std::string_view name() const override;

    const std::vector<int>& candidate_set() const { return candidates_; }
    std::int64_t exploration_rounds() const { return ie_rounds_; }
    std::int64_t united_rounds() const { return ue_rounds_; }
    int expected_set_size() const { return expected_size_; }
    const std::vector<ArmStatistics>& statistics() const { return stats_; }

    // The elimination rule, exposed for direct testing: drops every candidate
    // whose mean is at most the reference mean minus gamma * radius.
    static std::vector<int> eliminate(const std::vector<int>& candidates,
                                      const std::vector<double>& means, double reference_mean,
                                      double gamma, double radius);

private:
    struct PendingSlot {
        enum class Role { ExploreSubset, Exploit, UnitedExplore };
        Role role = Role::Exploit;
        Action action;
        std::vector<int> sampled_arms;       // arms whose observation feeds mu_hat
        std::vector<int> exploit_plays;      // plays per sampled arm (Exploit)
        int united_arm = -1;
        bool closes_round = false;
        std::vector<int> bounds_refresh;     // arms to re-bound after a UE round
    };

    void plan();
    std::vector<int> capacity_view() const;  // capacities the planner allocates with
    Action fill_remainder(Action action, const std::vector<char>& occupied) const;

    Mode mode_;
    int num_arms_;
    int plays_;
    std::int64_t horizon_;
    double gamma_;
    double delta_;
    WidthKind width_;
    std::vector<int> known_caps_;

    std::vector<ArmStatistics> stats_;
    std::vector<int> candidates_;  // ascending arm index
    int expected_size_ = 0;
    std::int64_t ie_rounds_ = 0;   // completed per-arm sampling rounds
    std::int64_t ue_rounds_ = 0;

    std::deque<PendingSlot> queue_;
    PendingSlot current_;
};

}  // namespace mpmab
