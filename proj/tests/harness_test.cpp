#include "mpmab/harness.hpp"

#include <doctest.h>

#include <cmath>

#include "mpmab/bounds.hpp"
#include "test_support.hpp"

using namespace mpmab;

TEST_CASE("builtin scenarios match their published parameters") {
    const Environment bern = builtin_scenario("bernoulli9");
    CHECK(bern.num_arms() == 9);
    CHECK(bern.plays() == 7);
    const OptimalAction opt = optimal_action(bern);
    CHECK(opt.action == Action{{2, 4, 1, 0, 0, 0, 0, 0, 0}});
    CHECK(opt.value == doctest::Approx(5.7).epsilon(1e-12));

    const Environment gauss = builtin_scenario("gaussian9");
    CHECK(gauss.reward_kind() == RewardKind::Gaussian);
    CHECK(gauss.variance() == doctest::Approx(0.5));
    for (int k = 0; k < 9; ++k) {
        CHECK(gauss.arm(k).mean == bern.arm(k).mean);
        CHECK(gauss.arm(k).capacity == bern.arm(k).capacity);
    }

    const Environment bs = builtin_scenario("bs20");
    CHECK(bs.num_arms() == 20);
    CHECK(bs.plays() == 18);
    CHECK(bs.arm(0).mean == doctest::Approx(1.0 / 1.2).epsilon(1e-12));
    CHECK(bs.arm(0).capacity == 8);
    CHECK(bs.arm(4).capacity == 1);  // 1.4 rounds down to 1
    CHECK(optimal_action(bs).value == doctest::Approx(14.546011586452763).epsilon(1e-9));

    CHECK_THROWS_AS(builtin_scenario("nope"), std::invalid_argument);
}

TEST_CASE("scenario hash tracks arm parameters only") {
    const Environment a = builtin_scenario("bernoulli9", 1);
    const Environment b = builtin_scenario("bernoulli9", 99);
    CHECK(scenario_hash(a) == scenario_hash(b));  // the seed is not content

    auto tweaked = test::bernoulli_env({0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1},
                                       {2, 4, 3, 3, 2, 1, 3, 4, 2}, 7);
    CHECK(scenario_hash(a) == scenario_hash(tweaked));
    auto other = test::bernoulli_env({0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1},
                                     {2, 4, 3, 3, 2, 1, 3, 4, 3}, 7);
    CHECK(scenario_hash(a) != scenario_hash(other));
    CHECK(scenario_hash(a) != scenario_hash(builtin_scenario("gaussian9")));
}

TEST_CASE("zero horizon yields metadata only") {
    ExperimentConfig config;
    config.scenario = "bernoulli9";
    config.horizon = 0;
    config.replications = 3;
    config.policies.push_back({"optimal", PolicyParams{}});
    const ExperimentResult result = run_experiment(config);
    CHECK(result.slots.empty());
    REQUIRE(result.traces.size() == 1);
    CHECK(result.traces[0].mean_regret.empty());
    CHECK(result.f_star == doctest::Approx(5.7).epsilon(1e-12));
}

TEST_CASE("the clairvoyant policy accrues zero regret") {
    ExperimentConfig config;
    config.scenario = "bernoulli9";
    config.horizon = 500;
    config.replications = 1;
    config.seed = 9;
    config.policies.push_back({"optimal", PolicyParams{}});
    const ExperimentResult result = run_experiment(config);
    REQUIRE(result.traces.size() == 1);
    for (double r : result.traces[0].mean_regret) CHECK(r == doctest::Approx(0.0));
    CHECK(result.traces[0].final_window_optimal_freq == doctest::Approx(1.0));
}

TEST_CASE("mean cumulative regret never decreases") {
    ExperimentConfig config;
    config.scenario = "bernoulli9";
    config.horizon = 3000;
    config.replications = 4;
    config.seed = 31;
    config.policies = {{"orchexplore", PolicyParams{}},
                       {"mpsesa", PolicyParams{}},
                       {"etcucb", PolicyParams{}}};
    const ExperimentResult result = run_experiment(config);
    for (const RegretTrace& trace : result.traces) {
        REQUIRE(trace.error.empty());
        for (std::size_t i = 1; i < trace.mean_regret.size(); ++i)
            CHECK(trace.mean_regret[i] >= trace.mean_regret[i - 1] - 1e-9);
    }
}

TEST_CASE("parallel and serial runs agree bitwise") {
    ExperimentConfig config;
    config.scenario = "bernoulli9";
    config.horizon = 2000;
    config.replications = 6;
    config.seed = 77;
    config.policies = {{"orchexplore", PolicyParams{}}};
    config.threads = 1;
    const ExperimentResult serial = run_experiment(config);
    config.threads = 4;
    const ExperimentResult parallel = run_experiment(config);
    REQUIRE(serial.traces.size() == parallel.traces.size());
    for (std::size_t i = 0; i < serial.traces.size(); ++i) {
        REQUIRE(serial.traces[i].mean_regret.size() == parallel.traces[i].mean_regret.size());
        for (std::size_t p = 0; p < serial.traces[i].mean_regret.size(); ++p) {
            CHECK(serial.traces[i].mean_regret[p] == parallel.traces[i].mean_regret[p]);
            CHECK(serial.traces[i].std_regret[p] == parallel.traces[i].std_regret[p]);
        }
    }
}

TEST_CASE("infeasible policies are reported and do not block others") {
    ExperimentConfig config;
    config.scenario = "bs20";
    config.horizon = 100;
    config.replications = 1;
    config.policies = {{"ucb_flat", PolicyParams{}}, {"optimal", PolicyParams{}}};
    const ExperimentResult result = run_experiment(config);
    REQUIRE(result.traces.size() == 2);
    CHECK(!result.traces[0].error.empty());
    CHECK(result.traces[0].error.find("17672631900") != std::string::npos);
    CHECK(result.traces[1].error.empty());
}

TEST_CASE("known capacity baselines flatten on the benchmark") {
    // The curve must bend: the second-half increment cannot exceed the
    // first-half increment beyond the replication noise, and must stay
    // strictly below the first half total (a linear curve fails both).
    // Equality arises legitimately at both extremes: eliminators converge to
    // exactly zero increments, index policies to equal log-slope increments.
    ExperimentConfig config;
    config.scenario = "bernoulli9";
    config.horizon = 100000;
    config.replications = 12;
    config.seed = 3;
    config.stride = 25000;
    config.policies = {{"klucb_kc", PolicyParams{}},
                       {"thompson_kc", PolicyParams{}},
                       {"se_kc", PolicyParams{}},
                       {"orchexplore_kc", PolicyParams{}},
                       {"mpsesa_kc", PolicyParams{}}};
    const ExperimentResult result = run_experiment(config);
    REQUIRE(result.slots.size() == 4);  // 25k, 50k, 75k, 100k
    for (const RegretTrace& trace : result.traces) {
        REQUIRE(trace.error.empty());
        const double quarter = trace.mean_regret[0];
        const double half = trace.mean_regret[1];
        const double full = trace.mean_regret[3];
        const double noise =
            2.0 * trace.std_regret[3] / std::sqrt(static_cast<double>(config.replications));
        CAPTURE(trace.policy);
        CHECK(full - half <= half - quarter + noise);
        CHECK(full - half < half);
    }
}

TEST_CASE("sample complexity experiment on an easy arm") {
    const ArmSpec arm{0.9, 1, RewardKind::Bernoulli, 0.0};
    const SampleComplexityResult result = sample_complexity_experiment(arm, 0.1, 200, 42);
    CHECK(result.censored_count == 0);
    CHECK(result.correctness_rate >= 0.9);
    CHECK(result.median_ie_count >= 1);
    CHECK(static_cast<double>(result.median_ie_count) <= result.theoretical_bound);
}

TEST_CASE("sample complexity grows roughly with the capacity squared") {
    const ArmSpec m1{0.8, 1, RewardKind::Bernoulli, 0.0};
    const ArmSpec m2{0.8, 2, RewardKind::Bernoulli, 0.0};
    const ArmSpec m4{0.8, 4, RewardKind::Bernoulli, 0.0};
    const auto r1 = sample_complexity_experiment(m1, 0.05, 300, 7);
    const auto r2 = sample_complexity_experiment(m2, 0.05, 300, 7);
    const auto r4 = sample_complexity_experiment(m4, 0.05, 300, 7);
    const double ratio21 = static_cast<double>(r2.median_ie_count) / r1.median_ie_count;
    const double ratio42 = static_cast<double>(r4.median_ie_count) / r2.median_ie_count;
    CAPTURE(r1.median_ie_count);
    CAPTURE(r2.median_ie_count);
    CAPTURE(r4.median_ie_count);
    CHECK(ratio21 >= 2.0);
    CHECK(ratio21 <= 8.0);
    CHECK(ratio42 >= 2.0);
    CHECK(ratio42 <= 8.0);
}

TEST_CASE("ci width table instantiates both formulas") {
    const auto grid = log_grid(1, 1'000'000);
    const auto rows = ci_width_table(1'000'000, grid);
    REQUIRE(rows.size() == grid.size());
    CHECK(rows.front().t == 1);
    CHECK(rows.back().t == 1'000'000);
    for (const CiWidthRow& row : rows) {
        const double expected_hfd = std::sqrt(std::log(2.0 * 1e12) / (2.0 * row.t));
        CHECK(row.hfd == doctest::Approx(expected_hfd).epsilon(1e-12));
    }
    CHECK(rows.back().uci < rows.back().hfd);
    CHECK(rows.front().uci == doctest::Approx(std::sqrt(std::log(2.0 * std::sqrt(2.0) * 1e6))));
}

TEST_CASE("theoretical curves for the gaussian benchmark") {
    const Environment env = builtin_scenario("gaussian9");
    const std::vector<std::int64_t> grid = {10000, 100000};
    const BoundCurves curves = theoretical_curves(env, 0.5, grid);
    // Frozen by independent summation over the arm table.
    CHECK(curves.lower_coefficient == doctest::Approx(26.345867976820358).epsilon(1e-9));
    CHECK(curves.upper_coefficient == doctest::Approx(5800.9814814814815).epsilon(1e-9));
    CHECK(curves.lower[0] == doctest::Approx(26.345867976820358 * std::log(1e4)).epsilon(1e-9));

    // Bernoulli case keeps only the mean-discrimination term in the lower bound.
    const Environment bern = builtin_scenario("bernoulli9");
    const BoundCurves bern_curves = theoretical_curves(bern, 0.5, grid);
    CHECK(bern_curves.lower_coefficient == doctest::Approx(11.156445707199918).epsilon(1e-9));
    CHECK(bern_curves.upper_coefficient == doctest::Approx(5787.6379271886814).epsilon(1e-9));

    // Unit capacities with a full remainder: the last term loses its denominator.
    auto unit = test::gaussian_env({0.9, 0.8, 0.7}, {1, 1, 1}, 2, 0.5);
    const BoundCurves unit_curves = theoretical_curves(unit, 0.5, grid);
    const double term1 = (0.8 - 0.7) / ((0.8 - 0.7) * (0.8 - 0.7));  // kl denom 2*0.5
    const double term2 = (0.9 - 0.8) * 0.5 / (0.9 * 0.9);
    const double term3 = (0.8 - 0.7) * 0.5 / (0.8 * 0.8);
    CHECK(unit_curves.lower_coefficient ==
          doctest::Approx(term1 + term2 + term3).epsilon(1e-12));
}

TEST_CASE("log grid covers the endpoints without duplicates") {
    const auto grid = log_grid(1, 1000, 5);
    CHECK(grid.front() == 1);
    CHECK(grid.back() == 1000);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}
