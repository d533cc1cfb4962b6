#include "mpmab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "mpmab/capest.hpp"
#include "mpmab/policies/registry.hpp"

namespace mpmab {

std::vector<std::string> scenario_names() { return {"bernoulli9", "gaussian9", "bs20"}; }

namespace {

std::vector<ArmSpec> nine_arm_table(RewardKind kind) {
    const double means[] = {0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
    const int caps[] = {2, 4, 3, 3, 2, 1, 3, 4, 2};
    std::vector<ArmSpec> arms;
    for (int k = 0; k < 9; ++k)
        arms.push_back({means[k], caps[k], kind, kind == RewardKind::Gaussian ? 0.5 : 0.0});
    return arms;
}

std::vector<ArmSpec> base_station_table() {
    // Round-trip latencies (100 ms) and throughputs (100 Mbps) of two 5G and
    // eighteen 4G stations; means are reciprocal latencies, capacities the
    // rounded throughputs.
    const double rtt[] = {1.2, 1.1, 4.2, 4.9, 4.5, 3.4, 5.0, 4.2, 5.1, 3.9,
                          4.8, 5.7, 3.7, 4.7, 3.2, 5.1, 4.4, 5.1, 4.9, 4.1};
    const double thr[] = {8.2, 8.1, 1.2, 1.2, 1.4, 1.1, 1.3, 1.2, 1.1, 1.4,
                          1.0, 1.1, 1.2, 1.0, 1.3, 1.2, 1.0, 1.1, 1.3, 1.2};
    std::vector<ArmSpec> arms;
    for (int k = 0; k < 20; ++k)
        arms.push_back({1.0 / rtt[k], static_cast<int>(std::lround(thr[k])),
                        RewardKind::Bernoulli, 0.0});
    return arms;
}

}  // namespace

Environment builtin_scenario(const std::string& name, std::uint64_t seed) {
    if (name == "bernoulli9")
        return Environment::create(nine_arm_table(RewardKind::Bernoulli), 7, seed);
    if (name == "gaussian9")
        return Environment::create(nine_arm_table(RewardKind::Gaussian), 7, seed);
    if (name == "bs20") {
        // Several stations share a latency, so equal means are expected here.
        return Environment::create(base_station_table(), 18, seed,
                                   /*allow_duplicate_means=*/true);
    }
    std::string known;
    for (const auto& s : scenario_names()) {
        if (!known.empty()) known += ", ";
        known += s;
    }
    throw std::invalid_argument("unknown scenario '" + name + "'; available: " + known);
}

Environment environment_from_config(const ExperimentConfig& config) {
    if (!config.scenario.empty()) return builtin_scenario(config.scenario, config.seed);
    if (config.arms.empty())
        throw std::invalid_argument("config needs either a scenario name or an arm table");
    return Environment::create(config.arms, config.plays, config.seed);
}

std::vector<std::int64_t> log_grid(std::int64_t lo, std::int64_t hi, int per_decade) {
    std::vector<std::int64_t> grid;
    const double step = std::pow(10.0, 1.0 / per_decade);
    double x = static_cast<double>(lo);
    while (x < static_cast<double>(hi)) {
        const std::int64_t v = static_cast<std::int64_t>(std::llround(x));
        if (grid.empty() || v > grid.back()) grid.push_back(v);
        x *= step;
    }
    if (grid.empty() || grid.back() != hi) grid.push_back(hi);
    return grid;
}

std::string scenario_hash(const Environment& env) {
    // FNV-1a over the canonical parameter string.
    char buffer[96];
    std::uint64_t h = 1469598103934665603ULL;
    const auto absorb = [&](const char* data, int len) {
        for (int i = 0; i < len; ++i) {
            h ^= static_cast<unsigned char>(data[i]);
            h *= 1099511628211ULL;
        }
    };
    int len = std::snprintf(buffer, sizeof buffer, "K=%d;N=%d;", env.num_arms(), env.plays());
    absorb(buffer, len);
    for (const ArmSpec& arm : env.arms()) {
        len = std::snprintf(buffer, sizeof buffer, "%.17g,%d,%s,%.17g;", arm.mean, arm.capacity,
                            to_string(arm.kind).c_str(), arm.variance);
        absorb(buffer, len);
    }
    len = std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buffer, static_cast<std::size_t>(len));
}

namespace {

std::vector<std::int64_t> make_log_slots(std::int64_t horizon, std::int64_t stride) {
    std::vector<std::int64_t> slots;
    if (horizon <= 0) return slots;
    const std::int64_t s = stride > 0 ? stride : std::max<std::int64_t>(1, horizon / 1000);
    for (std::int64_t t = s; t <= horizon; t += s) slots.push_back(t);
    if (slots.empty() || slots.back() != horizon) slots.push_back(horizon);
    return slots;
}

struct ReplicationTrace {
    std::vector<double> cumulative_regret;  // at logged slots
    std::vector<char> played_optimal;       // at logged slots
    double final_window_freq = 0.0;
};

ReplicationTrace run_replication(const Environment& env, const std::string& policy_name,
                                 const PolicyParams& params, const ExperimentConfig& config,
                                 std::uint64_t replication,
                                 const std::vector<std::int64_t>& slots) {
    PolicyContext ctx;
    ctx.num_arms = env.num_arms();
    ctx.plays = env.plays();
    ctx.horizon = config.horizon;
    ctx.reward_kind = env.reward_kind();
    ctx.variance = env.variance();
    ctx.seed = config.seed;
    ctx.replication = replication;
    if (policy_uses_true_capacities(policy_name)) {
        for (const ArmSpec& arm : env.arms()) ctx.known_capacities.push_back(arm.capacity);
    }
    if (policy_name == "optimal") {
        for (const ArmSpec& arm : env.arms()) ctx.known_means.push_back(arm.mean);
    }

    const auto policy = make_policy(policy_name, ctx, params);
    RandomStream env_rng(config.seed, replication, /*purpose=*/0);

    const OptimalAction opt = optimal_action(env);
    const std::int64_t window_start =
        std::max<std::int64_t>(1, config.horizon - std::min<std::int64_t>(1000, config.horizon) + 1);

    ReplicationTrace trace;
    trace.cumulative_regret.reserve(slots.size());
    trace.played_optimal.reserve(slots.size());

    double cumulative = 0.0;
    std::int64_t window_hits = 0;
    std::size_t next_slot = 0;
    for (std::int64_t t = 1; t <= config.horizon; ++t) {
        const Action action = policy->select_action(t);
        const Feedback feedback = sample_feedback(env, action, env_rng);
        policy->observe(t, feedback);

        double value = 0.0;
        for (int k = 0; k < env.num_arms(); ++k) {
            const int plays = action.counts[static_cast<std::size_t>(k)];
            if (plays > 0) value += std::min(plays, env.arm(k).capacity) * env.arm(k).mean;
        }
        cumulative += opt.value - value;

        const bool is_optimal = action == opt.action;
        if (t >= window_start && is_optimal) ++window_hits;
        if (next_slot < slots.size() && t == slots[next_slot]) {
            trace.cumulative_regret.push_back(cumulative);
            trace.played_optimal.push_back(is_optimal ? 1 : 0);
            ++next_slot;
        }
    }
    const std::int64_t window_len = config.horizon - window_start + 1;
    trace.final_window_freq =
        config.horizon > 0 ? static_cast<double>(window_hits) / static_cast<double>(window_len)
                           : 0.0;
    return trace;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.replications < 0) throw std::invalid_argument("replications must be >= 0");
    if (config.horizon < 0) throw std::invalid_argument("horizon must be >= 0");

    const Environment env = environment_from_config(config);
    const OptimalAction opt = optimal_action(env);

    ExperimentResult result;
    result.config = config;
    result.scenario_hash = scenario_hash(env);
    result.f_star = opt.value;
    result.optimal = opt.action;
    result.top_arm_count = opt.top_arm_count;
    result.slots = make_log_slots(config.horizon, config.stride);

    for (const PolicySpec& spec : config.policies) {
        RegretTrace trace;
        trace.policy = spec.name;

        // Probe construction once so an infeasible policy fails fast and the
        // remaining policies still run.
        try {
            PolicyContext probe;
            probe.num_arms = env.num_arms();
            probe.plays = env.plays();
            probe.horizon = config.horizon;
            probe.reward_kind = env.reward_kind();
            probe.variance = env.variance();
            probe.seed = config.seed;
            if (policy_uses_true_capacities(spec.name) || spec.name == "optimal") {
                for (const ArmSpec& arm : env.arms()) {
                    probe.known_capacities.push_back(arm.capacity);
                    probe.known_means.push_back(arm.mean);
                }
            }
            (void)make_policy(spec.name, probe, spec.params);
        } catch (const std::exception& e) {
            trace.error = e.what();
            result.traces.push_back(std::move(trace));
            continue;
        }

        const int reps = config.replications;
        std::vector<ReplicationTrace> reps_out(static_cast<std::size_t>(reps));
        if (reps > 0 && config.horizon > 0) {
            int thread_count = config.threads > 0
                                   ? config.threads
                                   : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
            thread_count = std::min(thread_count, reps);
            std::atomic<int> next{0};
            const auto worker = [&]() {
                for (;;) {
                    const int r = next.fetch_add(1);
                    if (r >= reps) return;
                    reps_out[static_cast<std::size_t>(r)] =
                        run_replication(env, spec.name, spec.params, config,
                                        static_cast<std::uint64_t>(r), result.slots);
                }
            };
            if (thread_count <= 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
                for (auto& th : pool) th.join();
            }
        }

        const std::size_t points = result.slots.size();
        trace.mean_regret.assign(points, 0.0);
        trace.std_regret.assign(points, 0.0);
        trace.optimal_action_freq.assign(points, 0.0);
        if (reps > 0 && config.horizon > 0) {
            // Sequential reduction in replication order keeps parallel and
            // serial runs bit-identical.
            for (std::size_t p = 0; p < points; ++p) {
                double sum = 0.0;
                double freq = 0.0;
                for (int r = 0; r < reps; ++r) {
                    sum += reps_out[static_cast<std::size_t>(r)].cumulative_regret[p];
                    freq += reps_out[static_cast<std::size_t>(r)].played_optimal[p];
                }
                const double mean = sum / reps;
                double sq = 0.0;
                for (int r = 0; r < reps; ++r) {
                    const double d = reps_out[static_cast<std::size_t>(r)].cumulative_regret[p] - mean;
                    sq += d * d;
                }
                trace.mean_regret[p] = mean;
                trace.std_regret[p] = reps > 1 ? std::sqrt(sq / (reps - 1)) : 0.0;
                trace.optimal_action_freq[p] = freq / reps;
            }
            double window = 0.0;
            for (int r = 0; r < reps; ++r)
                window += reps_out[static_cast<std::size_t>(r)].final_window_freq;
            trace.final_window_optimal_freq = window / reps;
        }
        result.traces.push_back(std::move(trace));
    }
    return result;
}

SampleComplexityResult sample_complexity_experiment(const ArmSpec& arm, double delta,
                                                    int replications, std::uint64_t seed,
                                                    std::int64_t max_slots) {
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("sample complexity: delta must lie in (0,1)");
    if (replications < 1) throw std::invalid_argument("sample complexity: need replications >= 1");

    // The saturating slot uses twice the capacity so the upper clamp starts
    // strictly above the truth.
    const int plays = 2 * arm.capacity;

    SampleComplexityResult result;
    result.theoretical_bound = 49.0 * static_cast<double>(arm.capacity) *
                               static_cast<double>(arm.capacity) / (arm.mean * arm.mean) *
                               std::log(2.0 / delta);

    std::int64_t correct = 0, estimated = 0, within = 0;
    std::vector<std::int64_t> stops;
    for (int r = 0; r < replications; ++r) {
        RandomStream rng(seed, static_cast<std::uint64_t>(r), /*purpose=*/2);
        ArmStatistics stats = make_arm_statistics(plays);
        SampleComplexityResult::Replication rep;
        rep.censored = true;
        for (std::int64_t t = 1; t <= max_slots; ++t) {
            const double x = arm.kind == RewardKind::Bernoulli
                                 ? (rng.bernoulli(arm.mean) ? 1.0 : 0.0)
                                 : rng.normal(arm.mean, arm.variance);
            const bool united = (t % 2 == 0);
            if (united)
                stats.add_ue_sample(std::min(plays, arm.capacity) * x);
            else
                stats.add_ie_sample(x);
            stats = update_capacity_bounds(stats, delta, plays);
            if (stats.capacity_pinned()) {
                rep.stop_slot = t;
                rep.ie_count = stats.ie_count;
                rep.ue_count = stats.ue_count;
                rep.estimate = *capacity_estimate(stats);
                rep.correct = rep.estimate == arm.capacity;
                rep.censored = false;
                break;
            }
        }
        if (!rep.censored) {
            ++estimated;
            if (rep.correct) ++correct;
            if (static_cast<double>(rep.ie_count) <= result.theoretical_bound) ++within;
            stops.push_back(rep.ie_count);
        } else {
            ++result.censored_count;
        }
        result.replications.push_back(rep);
    }
    result.correctness_rate = estimated > 0 ? static_cast<double>(correct) / estimated : 0.0;
    result.within_bound_rate = estimated > 0 ? static_cast<double>(within) / estimated : 0.0;
    if (!stops.empty()) {
        std::nth_element(stops.begin(), stops.begin() + stops.size() / 2, stops.end());
        result.median_ie_count = stops[stops.size() / 2];
    }
    return result;
}

std::vector<CiWidthRow> ci_width_table(std::int64_t horizon, std::span<const std::int64_t> grid) {
    if (horizon < 1) throw std::invalid_argument("ci width table: horizon must be >= 1");
    std::vector<CiWidthRow> rows;
    const double T = static_cast<double>(horizon);
    for (const std::int64_t t : grid) {
        if (t < 1) throw std::invalid_argument("ci width table: grid entries must be >= 1");
        rows.push_back({t, phi(t, 1.0 / T), rho(t, 1.0 / (T * T))});
    }
    return rows;
}

}  // namespace mpmab
