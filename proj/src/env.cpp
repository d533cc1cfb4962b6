#include "mpmab/env.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace mpmab {

int Action::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

Environment Environment::create(std::vector<ArmSpec> arms, int plays, std::uint64_t seed,
                                bool allow_duplicate_means) {
    if (arms.empty()) throw std::invalid_argument("environment needs at least one arm");
    const int K = static_cast<int>(arms.size());
    if (plays < 1) throw std::invalid_argument("plays must be >= 1");
    if (plays >= K) throw std::invalid_argument("model requires N < K");

    long long total_capacity = 0;
    for (int k = 0; k < K; ++k) {
        const ArmSpec& a = arms[static_cast<std::size_t>(k)];
        if (!(a.mean > 0.0) || a.mean > 1.0)
            throw std::invalid_argument("arm " + std::to_string(k + 1) + ": mean must lie in (0,1]");
        if (a.capacity < 1 || a.capacity > plays)
            throw std::invalid_argument("arm " + std::to_string(k + 1) + ": capacity must lie in [1,N]");
        if (a.kind == RewardKind::Gaussian) {
            if (!(a.variance > 0.0) || a.variance > 0.5)
                throw std::invalid_argument("arm " + std::to_string(k + 1) +
                                            ": gaussian variance must lie in (0, 1/2]");
        }
        if (a.kind != arms.front().kind)
            throw std::invalid_argument("all arms must share one reward distribution family");
        if (a.kind == RewardKind::Gaussian && a.variance != arms.front().variance)
            throw std::invalid_argument("gaussian arms must share one variance");
        total_capacity += a.capacity;
    }
    if (total_capacity < plays)
        throw std::invalid_argument("total capacity " + std::to_string(total_capacity) +
                                    " cannot cover N=" + std::to_string(plays) +
                                    " plays; optimal action undefined");

    if (!allow_duplicate_means) {
        for (int i = 0; i < K; ++i)
            for (int j = i + 1; j < K; ++j)
                if (arms[static_cast<std::size_t>(i)].mean == arms[static_cast<std::size_t>(j)].mean)
                    throw std::invalid_argument("arms " + std::to_string(i + 1) + " and " +
                                                std::to_string(j + 1) +
                                                " share the mean; the model assumes distinct means");
    }
    return Environment(std::move(arms), plays, seed);
}

bool Environment::is_valid_action(const Action& action) const {
    if (static_cast<int>(action.counts.size()) != num_arms()) return false;
    int sum = 0;
    for (int c : action.counts) {
        if (c < 0 || c > plays_) return false;
        sum += c;
    }
    return sum == plays_;
}

void Environment::require_valid_action(const Action& action) const {
    if (!is_valid_action(action))
        throw std::invalid_argument("action must assign exactly N nonnegative plays over K arms");
}

Feedback sample_feedback(const Environment& env, const Action& action, RandomStream& rng) {
    env.require_valid_action(action);
    Feedback fb;
    for (int k = 0; k < env.num_arms(); ++k) {
        const int plays = action.counts[static_cast<std::size_t>(k)];
        if (plays == 0) continue;
        const ArmSpec& arm = env.arm(k);
        const double x = arm.kind == RewardKind::Bernoulli
                             ? (rng.bernoulli(arm.mean) ? 1.0 : 0.0)
                             : rng.normal(arm.mean, arm.variance);
        const int utilized = std::min(plays, arm.capacity);
        fb.observations.push_back({k, plays, static_cast<double>(utilized) * x});
    }
    return fb;
}

double expected_reward(const Environment& env, const Action& action) {
    env.require_valid_action(action);
    double value = 0.0;
    for (int k = 0; k < env.num_arms(); ++k) {
        const int plays = action.counts[static_cast<std::size_t>(k)];
        if (plays == 0) continue;
        value += static_cast<double>(std::min(plays, env.arm(k).capacity)) * env.arm(k).mean;
    }
    return value;
}

OptimalAction optimal_action(const Environment& env) {
    const int K = env.num_arms();
    std::vector<int> order(static_cast<std::size_t>(K));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return env.arm(a).mean > env.arm(b).mean; });

    OptimalAction result;
    result.action.counts.assign(static_cast<std::size_t>(K), 0);
    int remaining = env.plays();
    for (int k : order) {
        const int take = std::min(remaining, env.arm(k).capacity);
        result.action.counts[static_cast<std::size_t>(k)] = take;
        remaining -= take;
        ++result.top_arm_count;
        if (remaining == 0) break;
    }
    result.value = expected_reward(env, result.action);
    return result;
}

double instantaneous_regret(const Environment& env, const Action& action) {
    return optimal_action(env).value - expected_reward(env, action);
}

std::uint64_t action_space_size(int num_arms, int plays) {
    // C(plays + num_arms - 1, num_arms - 1) with saturation.
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t result = 1;
    const std::uint64_t n = static_cast<std::uint64_t>(plays) + static_cast<std::uint64_t>(num_arms) - 1;
    std::uint64_t r = std::min<std::uint64_t>(static_cast<std::uint64_t>(num_arms) - 1,
                                              static_cast<std::uint64_t>(plays));
    for (std::uint64_t i = 1; i <= r; ++i) {
        const std::uint64_t factor = n - r + i;
        if (result > cap / factor) return cap;
        result = result * factor / i;
    }
    return result;
}

namespace {
void enumerate_rec(int arm, int remaining, std::vector<int>& current, std::vector<Action>& out) {
    if (arm == static_cast<int>(current.size()) - 1) {
        current[static_cast<std::size_t>(arm)] = remaining;
        out.push_back(Action{current});
        return;
    }
    for (int c = 0; c <= remaining; ++c) {
        current[static_cast<std::size_t>(arm)] = c;
        enumerate_rec(arm + 1, remaining - c, current, out);
    }
}
}  // namespace

std::vector<Action> enumerate_actions(int num_arms, int plays) {
    std::vector<Action> out;
    std::vector<int> current(static_cast<std::size_t>(num_arms), 0);
    enumerate_rec(0, plays, current, out);
    return out;
}

std::string to_string(RewardKind kind) {
    return kind == RewardKind::Bernoulli ? "bernoulli" : "gaussian";
}

std::optional<RewardKind> reward_kind_from_string(const std::string& name) {
    if (name == "bernoulli") return RewardKind::Bernoulli;
    if (name == "gaussian") return RewardKind::Gaussian;
    return std::nullopt;
}

}  // namespace mpmab
