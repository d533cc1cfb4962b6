#include "mpmab/capest.hpp"

#include <doctest.h>

#include <cmath>

#include "mpmab/harness.hpp"
#include "mpmab/rng.hpp"

using namespace mpmab;

TEST_CASE("phi closed form against high precision references") {
    CHECK(phi(1, 0.1) == doctest::Approx(1.8281974356819243).epsilon(1e-12));
    CHECK(phi(1'000'000, 0.01) == doctest::Approx(0.0024704337019644010).epsilon(1e-12));
    CHECK_THROWS_AS(phi(0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(phi(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(phi(3, 1.0), std::invalid_argument);
}

TEST_CASE("phi decreases in the sample count") {
    for (const std::int64_t x : {1, 10, 100}) CHECK(phi(4 * x, 0.05) < phi(x, 0.05));
    double previous = phi(1, 0.2);
    for (std::int64_t x = 2; x <= 4096; x *= 2) {
        const double value = phi(x, 0.2);
        CHECK(value < previous);
        previous = value;
    }
}

TEST_CASE("rho closed form") {
    CHECK(rho(5, 2.0) == doctest::Approx(0.0));
    CHECK(rho(2, 0.05) == doctest::Approx(0.96032279131992076).epsilon(1e-12));
    CHECK(rho(8, 0.05) == doctest::Approx(rho(2, 0.05) / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(rho(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(rho(2, 2.5), std::invalid_argument);
}

TEST_CASE("capacity bounds pin on tight statistics") {
    ArmStatistics stats = make_arm_statistics(7);
    stats.mu_hat = 0.5;
    stats.nu_hat = 1.5;
    stats.ie_count = 1'000'000;
    stats.ue_count = 1'000'000;
    const ArmStatistics updated = update_capacity_bounds(stats, 0.01, 7);
    CHECK(updated.m_lower == 3);
    CHECK(updated.m_upper == 3);
    CHECK(capacity_estimate(updated) == 3);
}

TEST_CASE("capacity bounds stay put without united samples") {
    ArmStatistics stats = make_arm_statistics(9);
    stats.mu_hat = 0.4;
    stats.ie_count = 50;
    const ArmStatistics updated = update_capacity_bounds(stats, 0.1, 9);
    CHECK(updated.m_lower == 1);
    CHECK(updated.m_upper == 9);
}

TEST_CASE("upper bound freezes while the mean is drowned in noise") {
    ArmStatistics stats = make_arm_statistics(9);
    stats.mu_hat = 0.001;  // phi(1, delta) far exceeds it
    stats.nu_hat = 0.002;
    stats.ie_count = 1;
    stats.ue_count = 1;
    const ArmStatistics updated = update_capacity_bounds(stats, 0.1, 9);
    CHECK(updated.m_upper == 9);
}

TEST_CASE("bounds refine monotonically and stick once equal") {
    RandomStream rng(99, 0, 0);
    const int plays = 6;
    for (int trial = 0; trial < 50; ++trial) {
        ArmStatistics stats = make_arm_statistics(plays);
        int prev_lower = stats.m_lower;
        int prev_upper = stats.m_upper;
        bool pinned = false;
        int pinned_at = -1;
        for (int step = 0; step < 300; ++step) {
            // Feed arbitrary (even inconsistent) observations; the invariants
            // must hold regardless of what the data does.
            if (rng.bernoulli(0.5))
                stats.add_ie_sample(rng.uniform01());
            else
                stats.add_ue_sample(3.0 * rng.uniform01());
            stats = update_capacity_bounds(stats, 0.05, plays);
            CHECK(stats.m_lower >= 1);
            CHECK(stats.m_lower <= stats.m_upper);
            CHECK(stats.m_upper <= plays);
            CHECK(stats.m_lower >= prev_lower);
            CHECK(stats.m_upper <= prev_upper);
            if (pinned) CHECK(stats.m_lower == pinned_at);
            if (!pinned && stats.capacity_pinned()) {
                pinned = true;
                pinned_at = stats.m_lower;
            }
            prev_lower = stats.m_lower;
            prev_upper = stats.m_upper;
        }
    }
}

TEST_CASE("capacity estimate exists only at equality") {
    ArmStatistics open = make_arm_statistics(9);
    CHECK_FALSE(capacity_estimate(open).has_value());
    open.m_lower = 2;
    open.m_upper = 5;
    CHECK_FALSE(capacity_estimate(open).has_value());
    open.m_upper = 2;
    CHECK(capacity_estimate(open) == 2);
}

TEST_CASE("uniform interval covers the true capacity (monte carlo)") {
    // Alternating single-play and saturating slots on one Bernoulli arm; the
    // running real-valued interval must contain m at every checked slot in
    // all but a delta fraction of replications.
    const double mu = 0.7;
    const int m = 2;
    const int plays = 4;
    const double delta = 0.2;
    const int replications = 10'000;
    int violations = 0;
    for (int r = 0; r < replications; ++r) {
        RandomStream rng(1234, static_cast<std::uint64_t>(r), 5);
        double mu_sum = 0.0, nu_sum = 0.0;
        std::int64_t ies = 0, ues = 0;
        bool violated = false;
        for (int slot = 1; slot <= 60 && !violated; ++slot) {
            const double x = rng.bernoulli(mu) ? 1.0 : 0.0;
            if (slot % 2 == 1) {
                mu_sum += x;
                ++ies;
            } else {
                nu_sum += std::min(plays, m) * x;
                ++ues;
            }
            if (ies == 0 || ues == 0) continue;
            const double w = phi(ies, delta) + phi(ues, delta);
            const double mu_hat = mu_sum / static_cast<double>(ies);
            const double nu_hat = nu_sum / static_cast<double>(ues);
            const double lower = nu_hat / (mu_hat + w);
            if (lower > m) violated = true;
            if (mu_hat - w > 0.0 && nu_hat / (mu_hat - w) < m) violated = true;
        }
        if (violated) ++violations;
    }
    const double failure_rate = static_cast<double>(violations) / replications;
    const double tolerance = 3.0 * std::sqrt(delta * (1.0 - delta) / replications);
    CHECK(failure_rate <= delta + tolerance);
}

TEST_CASE("bernoulli kl divergence") {
    for (const double p : {0.0, 0.3, 1.0}) CHECK(kl_bernoulli(p, p) == doctest::Approx(0.0));
    CHECK(kl_bernoulli(0.5, 0.75) == doctest::Approx(0.14384103622589046).epsilon(1e-12));
    CHECK(kl_bernoulli(0.0, 0.4) == doctest::Approx(-std::log(0.6)).epsilon(1e-12));
    CHECK(std::isinf(kl_bernoulli(0.5, 0.0)));
    CHECK(std::isinf(kl_bernoulli(0.5, 1.0)));
    CHECK(kl_bernoulli(0.2, 0.6) > 0.0);
}

TEST_CASE("gaussian kl divergence") {
    CHECK(kl_gaussian(0.4, 0.4, 0.5) == doctest::Approx(0.0));
    CHECK(kl_gaussian(0.9, 0.5, 0.5) == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(kl_gaussian(0.3, 0.8, 0.25) == doctest::Approx(kl_gaussian(0.8, 0.3, 0.25)));
    CHECK_THROWS_AS(kl_gaussian(0.1, 0.2, 0.0), std::invalid_argument);
}

TEST_CASE("klucb index solves the budget equation") {
    // mu = 0, n = 1, t = 10: kl(0, u) = -log(1 - u) = log 10 + 4 log log 10.
    CHECK(klucb_index(0.0, 1, 10, RewardKind::Bernoulli) ==
          doctest::Approx(0.99644256277503991).epsilon(1e-8));
    // Enormous samples collapse the index onto the mean.
    CHECK(klucb_index(0.5, 1'000'000'000, 100, RewardKind::Bernoulli) ==
          doctest::Approx(0.5).epsilon(1e-3));
    // Gaussian closed form at t = e^2.
    const std::int64_t t_e2 = static_cast<std::int64_t>(std::round(std::exp(2.0)));
    CHECK(klucb_index(0.5, 4, 7, RewardKind::Gaussian, 0.5) ==
          doctest::Approx(0.5 + std::sqrt(0.25 * klucb_budget(7))).epsilon(1e-12));
    CHECK(t_e2 == 7);
    CHECK_THROWS_AS(klucb_index(0.5, 0, 10, RewardKind::Bernoulli), std::invalid_argument);
}

TEST_CASE("klucb index dominates the mean and shrinks with samples") {
    RandomStream rng(7, 0, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const double mu = rng.uniform01();
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.uniform_below(1000));
        const std::int64_t t = 2 + static_cast<std::int64_t>(rng.uniform_below(100000));
        const double u = klucb_index(mu, n, t, RewardKind::Bernoulli);
        CHECK(u >= mu - 1e-12);
        const double u_more = klucb_index(mu, 4 * n, t, RewardKind::Bernoulli);
        CHECK(u_more <= u + 1e-9);
        // Interior roots satisfy the budget equation tightly.
        if (u < 1.0 - 1e-6 && u > mu + 1e-9) {
            const double residual =
                static_cast<double>(n) * kl_bernoulli(mu, u) - klucb_budget(t);
            CHECK(std::abs(residual) <= 1e-6);
        }
    }
}

TEST_CASE("elimination radius closed form and monotonicity") {
    CHECK(elimination_radius(1, 1) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    const std::int64_t e4 = 55;  // ceil(e^4) = 55, log(55) > 1
    CHECK(elimination_radius(1, e4) ==
          doctest::Approx(2.0 * std::sqrt(2.0 * std::log(55.0))).epsilon(1e-12));
    CHECK_THROWS_AS(elimination_radius(0, 10), std::invalid_argument);

    double previous = elimination_radius(1, 100000);
    for (std::int64_t tau = 2; tau <= 100000; tau = tau * 3 / 2 + 1) {
        const double value = elimination_radius(tau, 100000);
        CHECK(value <= previous + 1e-15);
        previous = value;
    }
}

TEST_CASE("anytime width beats the per-slot width beyond the first sample") {
    // At t = 1 the order flips (the gap is exactly log 2 in squared widths);
    // from t = 2 on the anytime width is strictly smaller.
    const double T = 1e6;
    CHECK(phi(1, 1.0 / T) > rho(1, 1.0 / (T * T)));
    const double gap = phi(1, 1.0 / T) * phi(1, 1.0 / T) - rho(1, 1.0 / (T * T)) * rho(1, 1.0 / (T * T));
    CHECK(gap == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    for (const std::int64_t t : log_grid(2, 1'000'000)) {
        CHECK(phi(t, 1.0 / T) < rho(t, 1.0 / (T * T)));
    }
}
