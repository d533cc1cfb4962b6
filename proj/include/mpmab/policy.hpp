#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpmab/capest.hpp"
#include "mpmab/env.hpp"

namespace mpmab {

// Everything a policy may know about the task before play starts. True means
// stay hidden; true capacities appear only for the known-capacity variants.
struct PolicyContext {
    int num_arms = 0;
    int plays = 0;
    std::int64_t horizon = 0;
    RewardKind reward_kind = RewardKind::Bernoulli;
    double variance = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
    std::vector<int> known_capacities;  // KC variants only
    std::vector<double> known_means;    // clairvoyant baseline only
};

struct PolicyParams {
    double gamma = 1.0;            // elimination aggressiveness
    double xi = 1.0;               // capacity-confidence tuner (MP-SE-SA)
    double delta_override = 0.0;   // 0 keeps the per-policy default
    WidthKind width = WidthKind::Uci;
    std::uint64_t action_space_cap = 1'000'000;
};

// A policy is driven one slot at a time: the harness asks for an action,
// plays it, and hands back the semi-bandit feedback.
class Policy {
public:
    virtual ~Policy() = default;
    virtual Action select_action(std::int64_t t) = 0;
    virtual void observe(std::int64_t t, const Feedback& feedback) = 0;
    virtual std::string_view name() const = 0;
};

// Raised at construction when a policy cannot run on the given instance
// (e.g. the enumerated action space exceeds its cap).
class PolicyInfeasible : public std::runtime_error {
public:
    explicit PolicyInfeasible(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mpmab
