#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpmab/env.hpp"
#include "mpmab/policy.hpp"

namespace mpmab {

inline constexpr const char* kVersion = "mpmab 0.1.0";

// Built-in instances: the nine-arm Bernoulli benchmark, its Gaussian twin,
// and the twenty-station base-station selection scenario.
std::vector<std::string> scenario_names();
Environment builtin_scenario(const std::string& name, std::uint64_t seed = 0);

struct PolicySpec {
    std::string name;
    PolicyParams params;
};

struct ExperimentConfig {
    std::string scenario;        // builtin name; empty when arms are inline
    std::vector<ArmSpec> arms;   // inline environment definition
    int plays = 0;               // inline plays; ignored for builtin scenarios
    std::int64_t horizon = 100000;
    int replications = 200;
    std::uint64_t seed = 0;
    std::int64_t stride = 0;     // 0 = max(1, horizon / 1000); last slot always logged
    int threads = 0;             // 0 = hardware concurrency
    std::string out;             // output path prefix; empty = no files
    std::vector<PolicySpec> policies;
};

Environment environment_from_config(const ExperimentConfig& config);

// Mean/stddev of cumulative pseudo-regret across replications for one
// policy, on the shared logged time grid. A nonempty `error` marks a policy
// that could not run on this instance (the others still do).
struct RegretTrace {
    std::string policy;
    std::vector<double> mean_regret;
    std::vector<double> std_regret;
    std::vector<double> optimal_action_freq;  // share of replications playing a* at the slot
    double final_window_optimal_freq = 0.0;   // mean share of a* plays over the last
                                              // min(1000, T) slots
    std::string error;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::string scenario_hash;
    double f_star = 0.0;
    Action optimal;
    int top_arm_count = 0;
    std::vector<std::int64_t> slots;
    std::vector<RegretTrace> traces;
};

// Runs every policy for `replications` independent repetitions of the T-slot
// loop. Stream seeds derive from (seed, replication), so results do not
// depend on scheduling; replications may run on a thread pool.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Single-arm estimation study: alternate one single-play slot with one
// saturating slot, refresh the capacity bounds each slot, and record when
// the integer bounds first coincide.
struct SampleComplexityResult {
    struct Replication {
        std::int64_t stop_slot = 0;  // first slot with coinciding bounds
        std::int64_t ie_count = 0;
        std::int64_t ue_count = 0;
        int estimate = 0;
        bool correct = false;
        bool censored = false;  // bounds never met within the slot cap
    };
    std::vector<Replication> replications;
    double theoretical_bound = 0.0;   // 49 m^2 / mu^2 * log(2/delta)
    double correctness_rate = 0.0;    // among replications with an estimate
    double within_bound_rate = 0.0;   // fraction with ie_count <= bound
    std::int64_t median_ie_count = 0;
    std::int64_t censored_count = 0;
};

SampleComplexityResult sample_complexity_experiment(const ArmSpec& arm, double delta,
                                                    int replications, std::uint64_t seed,
                                                    std::int64_t max_slots = 10'000'000);

// Width comparison rows: the anytime width at confidence 1/T against the
// per-slot Hoeffding width union-bounded to 1/T^2.
struct CiWidthRow {
    std::int64_t t = 0;
    double uci = 0.0;
    double hfd = 0.0;
};

std::vector<CiWidthRow> ci_width_table(std::int64_t horizon, std::span<const std::int64_t> grid);

// Roughly `per_decade` log-spaced integers covering [lo, hi], deduplicated,
// endpoints included.
std::vector<std::int64_t> log_grid(std::int64_t lo, std::int64_t hi, int per_decade = 10);

// Content hash of the environment parameters (arm table and plays).
std::string scenario_hash(const Environment& env);

}  // namespace mpmab
