#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpmab/rng.hpp"

namespace mpmab {

enum class RewardKind { Bernoulli, Gaussian };

// One arm of the environment: per-load reward mean, reward capacity, and the
// per-load reward distribution.
struct ArmSpec {
    double mean = 0.0;
    int capacity = 1;
    RewardKind kind = RewardKind::Bernoulli;
    double variance = 0.0;  // Gaussian only
};

// An allocation of all N plays over the K arms.
struct Action {
    std::vector<int> counts;

    int total() const;
    bool operator==(const Action&) const = default;
};

// Semi-bandit feedback: one observation per arm that received a play.
struct Feedback {
    struct ArmObservation {
        int arm = 0;
        int plays = 0;
        double reward = 0.0;
    };
    std::vector<ArmObservation> observations;
};

struct OptimalAction {
    Action action;
    int top_arm_count = 0;  // L: number of arms used by the optimal action
    double value = 0.0;     // f(a*)
};

// Immutable ground truth for one bandit instance. Construction validates the
// model constraints; after that the object is safe to share across threads.
class Environment {
public:
    // Throws std::invalid_argument on any violated constraint. Duplicate
    // means are rejected unless allow_duplicate_means is set (arm index then
    // breaks every tie deterministically).
    static Environment create(std::vector<ArmSpec> arms, int plays, std::uint64_t seed,
                              bool allow_duplicate_means = false);

    int num_arms() const { return static_cast<int>(arms_.size()); }
    int plays() const { return plays_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<ArmSpec>& arms() const { return arms_; }
    const ArmSpec& arm(int k) const { return arms_[static_cast<std::size_t>(k)]; }
    RewardKind reward_kind() const { return arms_.front().kind; }
    double variance() const { return arms_.front().variance; }

    bool is_valid_action(const Action& action) const;
    void require_valid_action(const Action& action) const;

private:
    Environment(std::vector<ArmSpec> arms, int plays, std::uint64_t seed)
        : arms_(std::move(arms)), plays_(plays), seed_(seed) {}

    std::vector<ArmSpec> arms_;
    int plays_;
    std::uint64_t seed_;
};

// Draws one per-load sample X_k per selected arm and returns
// R_k = min(a_k, m_k) * X_k. All capacity units of an arm share the draw.
Feedback sample_feedback(const Environment& env, const Action& action, RandomStream& rng);

// f(a) = sum_k min(a_k, m_k) * mu_k.
double expected_reward(const Environment& env, const Action& action);

// Fills arms in descending order of true mean up to capacity; returns the
// action, the number of arms it uses, and its value.
OptimalAction optimal_action(const Environment& env);

// f(a*) - f(a), the pseudo-regret of playing `action` for one slot.
double instantaneous_regret(const Environment& env, const Action& action);

// |A| = C(N+K-1, K-1), saturating at UINT64_MAX on overflow.
std::uint64_t action_space_size(int num_arms, int plays);

// Enumerates the full action space of Eq-style compositions. Intended for
// small instances (flat baselines, brute-force checks).
std::vector<Action> enumerate_actions(int num_arms, int plays);

std::string to_string(RewardKind kind);
std::optional<RewardKind> reward_kind_from_string(const std::string& name);

}  // namespace mpmab
