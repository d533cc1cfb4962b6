#pragma once

#include <vector>

#include "mpmab/policy.hpp"
#include "mpmab/rng.hpp"

namespace mpmab {

// Index policies for the known-capacity setting: each slot computes one
// score per arm, plays the greedy oracle over (scores, true capacities), and
// refines the per-load means from R / min(a, m).
class KnownCapacityIndexPolicy : public Policy {
public:
    KnownCapacityIndexPolicy(const PolicyContext& ctx, const PolicyParams& params);

    void observe(std::int64_t t, const Feedback& feedback) override;

protected:
    Action play_scores(const std::vector<double>& scores) const;
    virtual void after_update(std::int64_t /*t*/) {}

    int num_arms_;
    int plays_;
    std::int64_t horizon_;
    RewardKind reward_kind_;
    double variance_;
    std::vector<int> capacities_;
    std::vector<double> mu_hat_;
    std::vector<std::int64_t> pull_count_;
    std::vector<double> success_;  // Bernoulli per-load ones
    RandomStream rng_;
};

// KL-UCB index over the per-load means.
class KlUcbKc : public KnownCapacityIndexPolicy {
public:
    using KnownCapacityIndexPolicy::KnownCapacityIndexPolicy;
    Action select_action(std::int64_t t) override;
    std::string_view name() const override { return "klucb_kc"; }
};

// Thompson sampling: Beta posterior for Bernoulli per-load rewards, conjugate
// normal posterior (prior mean 1/2, prior variance 1) for Gaussian.
class ThompsonKc : public KnownCapacityIndexPolicy {
public:
    ThompsonKc(const PolicyContext& ctx, const PolicyParams& params);
    Action select_action(std::int64_t t) override;
    std::string_view name() const override { return "thompson_kc"; }
};

// Successive elimination: explores the least-sampled candidates while the
// candidate set exceeds the number of top arms needed to cover all plays,
// then exploits the empirical means; arms leave the candidate set when their
// mean falls an elimination radius below the pivotal candidate.
class SeKc : public KnownCapacityIndexPolicy {
public:
    SeKc(const PolicyContext& ctx, const PolicyParams& params);
    Action select_action(std::int64_t t) override;
    std::string_view name() const override { return "se_kc"; }
    const std::vector<char>& active() const { return active_; }

protected:
    void after_update(std::int64_t t) override;

private:
    std::vector<char> active_;
    double gamma_;
};

// Clairvoyant reference: plays the optimal action every slot.
class OptimalPolicy : public Policy {
public:
    explicit OptimalPolicy(const PolicyContext& ctx);
    Action select_action(std::int64_t) override { return action_; }
    void observe(std::int64_t, const Feedback&) override {}
    std::string_view name() const override { return "optimal"; }

private:
    Action action_;
};

}  // namespace mpmab
