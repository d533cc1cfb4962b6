#pragma once

#include <cstdint>
#include <optional>

#include "mpmab/env.hpp"

namespace mpmab {

// Which half-width backs the capacity confidence interval: the anytime-valid
// one (Uci) or the per-time Hoeffding one (Hfd) kept for comparison runs.
enum class WidthKind { Uci, Hfd };

// Anytime-valid confidence half-width,
// phi(x, delta) = sqrt((1 + 1/x) * log(2 sqrt(x+1) / delta) / (2x)).
// Strictly decreasing in x for fixed delta. Requires x >= 1, delta in (0,1).
double phi(std::int64_t x, double delta);

// Hoeffding half-width, rho(x, delta) = sqrt(log(2/delta) / (2x)).
// Requires x >= 1, delta in (0,2].
double rho(std::int64_t x, double delta);

// Running statistics of one arm as a policy sees it.
struct ArmStatistics {
    double mu_hat = 0.0;   // per-load sample mean
    double nu_hat = 0.0;   // full-load sample mean
    std::int64_t ie_count = 0;
    std::int64_t ue_count = 0;
    int m_lower = 1;
    int m_upper = 1;

    void add_ie_sample(double per_load_reward) {
        mu_hat = (mu_hat * static_cast<double>(ie_count) + per_load_reward) /
                 static_cast<double>(ie_count + 1);
        ++ie_count;
    }

    void add_ue_sample(double full_load_reward) {
        nu_hat = (nu_hat * static_cast<double>(ue_count) + full_load_reward) /
                 static_cast<double>(ue_count + 1);
        ++ue_count;
    }

    bool capacity_pinned() const { return m_lower == m_upper; }
};

ArmStatistics make_arm_statistics(int plays);

// Recomputes the integer capacity bounds from the current running means and
// clamps them monotonically against the previous values (and against [1, N]).
// No-op while either exploration count is zero; leaves the upper bound alone
// when the lower confidence mean mu_hat - width is not positive.
ArmStatistics update_capacity_bounds(const ArmStatistics& stats, double delta, int plays,
                                     WidthKind width = WidthKind::Uci);

// The capacity estimate exists exactly when the integer bounds coincide.
std::optional<int> capacity_estimate(const ArmStatistics& stats);

// KL divergence between Bernoulli(p) and Bernoulli(q), with the usual
// 0 log 0 = 0 convention; +inf when q is degenerate and p differs.
double kl_bernoulli(double p, double q);

// KL divergence between two Gaussians with shared variance: (p-q)^2 / (2 s^2).
double kl_gaussian(double p, double q, double variance);

// Exploration budget log t + 4 log log t, with log log regularized so the
// index is defined for every t >= 1.
double klucb_budget(std::int64_t t);

// Optimistic mean index u = sup{q >= 0 : n * kl(mu_hat, q) <= klucb_budget(t)}.
// Bernoulli solves by bisection on [mu_hat, 1] to 1e-9; Gaussian is closed
// form. n must be positive; callers treat unplayed arms as +inf.
double klucb_index(double mu_hat, std::int64_t n, std::int64_t t, RewardKind kind,
                   double variance = 0.0);

// Successive-elimination radius U(tau, T) = 2 sqrt(2 log~(T/tau) / tau) where
// log~(x) = max(log x, 1). Non-increasing in tau over [1, T].
double elimination_radius(std::int64_t tau, std::int64_t horizon);

}  // namespace mpmab
