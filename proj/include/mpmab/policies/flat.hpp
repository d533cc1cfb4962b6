#pragma once

#include <vector>

#include "mpmab/policy.hpp"
#include "mpmab/rng.hpp"

namespace mpmab {

// Baselines that forget the shareable-arm structure: every N-play allocation
// becomes an independent meta-arm and a single-play bandit runs on top. The
// realized total reward, scaled by 1/N, is the meta-arm payoff.
// Construction refuses instances whose action space exceeds the cap.
class FlatPolicyBase : public Policy {
public:
    FlatPolicyBase(const PolicyContext& ctx, const PolicyParams& params);

    void observe(std::int64_t t, const Feedback& feedback) override;
    std::size_t meta_arm_count() const { return actions_.size(); }

protected:
    virtual void record(double normalized_reward, std::int64_t t) = 0;

    int plays_;
    std::int64_t horizon_;
    std::vector<Action> actions_;
    std::size_t chosen_ = 0;
    RandomStream rng_;
};

class UcbFlat : public FlatPolicyBase {
public:
    UcbFlat(const PolicyContext& ctx, const PolicyParams& params);
    Action select_action(std::int64_t t) override;
    std::string_view name() const override { return "ucb_flat"; }

protected:
    void record(double normalized_reward, std::int64_t t) override;

private:
    std::vector<double> mean_;
    std::vector<std::int64_t> count_;
    std::size_t unpulled_cursor_ = 0;
    std::int64_t total_pulls_ = 0;
};

class TsFlat : public FlatPolicyBase {
public:
    TsFlat(const PolicyContext& ctx, const PolicyParams& params);
    Action select_action(std::int64_t t) override;
    std::string_view name() const override { return "ts_flat"; }

protected:
    void record(double normalized_reward, std::int64_t t) override;

private:
    std::vector<std::int32_t> ones_;
    std::vector<std::int32_t> zeros_;
};

class SeFlat : public FlatPolicyBase {
public:
    SeFlat(const PolicyContext& ctx, const PolicyParams& params);
    Action select_action(std::int64_t t) override;
    std::string_view name() const override { return "se_flat"; }
    std::size_t active_count() const { return active_.size(); }

protected:
    void record(double normalized_reward, std::int64_t t) override;

private:
    std::vector<std::uint32_t> active_;
    std::vector<double> mean_;
    std::vector<std::int64_t> count_;
    std::size_t cursor_ = 0;
    std::int64_t rounds_ = 0;
    double gamma_;
};

}  // namespace mpmab
