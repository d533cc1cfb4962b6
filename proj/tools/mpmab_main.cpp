#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpmab/bounds.hpp"
#include "mpmab/harness.hpp"
#include "mpmab/io.hpp"
#include "mpmab/policies/registry.hpp"

namespace {

using namespace mpmab;

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    for (char c : csv) {
        if (c == ',') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            item += c;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

struct RunFlags {
    bool horizon = false, reps = false, seed = false, stride = false, threads = false,
         out = false, gamma = false, xi = false, width = false;
};

int cmd_run(const std::string& config_path, const std::string& scenario,
            const std::string& policies_csv, std::int64_t horizon, int reps, std::uint64_t seed,
            double gamma, double xi, const std::string& width, const std::string& out,
            std::int64_t stride, int threads, const RunFlags& set) {
    ExperimentConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    if (!scenario.empty()) {
        config.scenario = scenario;
        config.arms.clear();
    }
    if (set.horizon) config.horizon = horizon;
    if (set.reps) config.replications = reps;
    if (set.seed) config.seed = seed;
    if (set.stride) config.stride = stride;
    if (set.threads) config.threads = threads;
    if (set.out || config.out.empty()) config.out = out;

    WidthKind width_kind = WidthKind::Uci;
    if (width == "hfd")
        width_kind = WidthKind::Hfd;
    else if (width != "uci")
        throw std::invalid_argument("--width must be 'uci' or 'hfd'");

    if (!policies_csv.empty()) {
        config.policies.clear();
        for (const std::string& name : split_list(policies_csv)) {
            PolicySpec spec;
            spec.name = name;
            spec.params.gamma = gamma;
            spec.params.xi = xi;
            spec.params.width = width_kind;
            config.policies.push_back(spec);
        }
    } else {
        // Explicit flags override the config file's per-policy parameters.
        for (PolicySpec& spec : config.policies) {
            if (set.gamma) spec.params.gamma = gamma;
            if (set.xi) spec.params.xi = xi;
            if (set.width) spec.params.width = width_kind;
        }
    }
    if (config.policies.empty())
        throw std::invalid_argument("no policies requested; use --policies or a config file");
    for (const PolicySpec& spec : config.policies) {
        if (!is_registered_policy(spec.name)) {
            std::string known;
            for (const auto& p : registered_policies()) {
                if (!known.empty()) known += ", ";
                known += p;
            }
            throw std::invalid_argument("unknown policy '" + spec.name +
                                        "'; registered policies: " + known);
        }
    }

    const ExperimentResult result = run_experiment(config);
    const std::string csv_path = serialize_results(result, config.out);

    for (const RegretTrace& trace : result.traces) {
        if (!trace.error.empty()) {
            std::cerr << "warning: skipped " << trace.policy << ": " << trace.error << "\n";
            continue;
        }
        const double final_regret = trace.mean_regret.empty() ? 0.0 : trace.mean_regret.back();
        std::cout << trace.policy << "\tfinal_mean_regret=" << format_double(final_regret)
                  << "\toptimal_action_freq=" << format_double(trace.final_window_optimal_freq)
                  << "\n";
    }
    std::cout << "wrote " << csv_path << " and " << config.out << ".json\n";
    return 0;
}

int cmd_scenarios() {
    std::cout << "scenario\tK\tN\tf_star\n";
    for (const std::string& name : scenario_names()) {
        const Environment env = builtin_scenario(name);
        const OptimalAction opt = optimal_action(env);
        std::cout << name << "\t" << env.num_arms() << "\t" << env.plays() << "\t"
                  << format_double(opt.value) << "\n";
    }
    return 0;
}

int cmd_sample_complexity(double mean, int capacity, double delta, int reps, std::uint64_t seed) {
    ArmSpec arm{mean, capacity, RewardKind::Bernoulli, 0.0};
    const SampleComplexityResult result = sample_complexity_experiment(arm, delta, reps, seed);
    std::cout << "mean\t" << format_double(mean) << "\n"
              << "capacity\t" << capacity << "\n"
              << "delta\t" << format_double(delta) << "\n"
              << "replications\t" << reps << "\n"
              << "median_ie_count\t" << result.median_ie_count << "\n"
              << "correctness_rate\t" << format_double(result.correctness_rate) << "\n"
              << "theoretical_bound\t" << format_double(result.theoretical_bound) << "\n"
              << "within_bound_rate\t" << format_double(result.within_bound_rate) << "\n"
              << "censored\t" << result.censored_count << "\n";
    return 0;
}

int cmd_ci_compare(std::int64_t horizon, const std::string& out) {
    const auto grid = log_grid(1, horizon);
    const auto rows = ci_width_table(horizon, grid);
    std::string text = "t\tuci\thfd\n";
    for (const CiWidthRow& row : rows) {
        text += std::to_string(row.t) + "\t" + format_double(row.uci) + "\t" +
                format_double(row.hfd) + "\n";
    }
    if (out.empty()) {
        std::cout << text;
    } else {
        std::FILE* f = std::fopen(out.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot write '" + out + "'");
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_bounds(const std::string& scenario, double variance) {
    const Environment env = builtin_scenario(scenario);
    const std::vector<std::int64_t> grid = {1000, 10000, 100000, 1000000};
    const BoundCurves curves = theoretical_curves(env, variance, grid);
    std::cout << "lower_coefficient\t" << format_double(curves.lower_coefficient) << "\n";
    std::cout << "upper_coefficient\t" << format_double(curves.upper_coefficient) << "\n";
    std::cout << "T\tlower\tupper\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::cout << grid[i] << "\t" << format_double(curves.lower[i]) << "\t"
                  << format_double(curves.upper[i]) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and algorithm suite for multiple-play bandits with shareable arms"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run a regret experiment");
    std::string config_path, scenario, policies_csv, width = "uci", out = "results";
    std::int64_t horizon = 100000, stride = 0;
    int reps = 200, threads = 0;
    std::uint64_t seed = 0;
    double gamma = 1.0, xi = 1.0;
    run->add_option("--config", config_path, "JSON experiment description");
    run->add_option("--scenario", scenario, "Builtin scenario name");
    run->add_option("--policies", policies_csv, "Comma-separated policy names");
    auto* opt_horizon = run->add_option("--horizon", horizon, "Time slots per replication");
    auto* opt_reps = run->add_option("--reps", reps, "Number of replications");
    auto* opt_seed = run->add_option("--seed", seed, "Base seed");
    auto* opt_gamma = run->add_option("--gamma", gamma, "Elimination scale (successive elimination)");
    auto* opt_xi = run->add_option("--xi", xi, "Capacity confidence tuner (successive elimination)");
    auto* opt_width = run->add_option("--width", width, "Capacity interval width: uci or hfd")
                          ->check(CLI::IsMember({"uci", "hfd"}));
    auto* opt_out = run->add_option("--out", out, "Output path prefix");
    auto* opt_stride = run->add_option("--stride", stride, "Logging stride (0 = horizon/1000)");
    auto* opt_threads = run->add_option("--threads", threads, "Replication worker threads");

    // scenarios
    auto* scen = app.add_subcommand("scenarios", "List builtin scenarios");

    // sample-complexity
    auto* sc = app.add_subcommand("sample-complexity", "Single-arm capacity estimation study");
    double sc_mean = 0.8, sc_delta = 0.05;
    int sc_capacity = 3, sc_reps = 2000;
    std::uint64_t sc_seed = 0;
    sc->add_option("--mean", sc_mean, "Per-load reward mean");
    sc->add_option("--capacity", sc_capacity, "True reward capacity");
    sc->add_option("--delta", sc_delta, "Confidence parameter");
    sc->add_option("--reps", sc_reps, "Replications");
    sc->add_option("--seed", sc_seed, "Base seed");

    // ci-compare
    auto* ci = app.add_subcommand("ci-compare", "Tabulate both confidence widths");
    std::int64_t ci_horizon = 1000000;
    std::string ci_out;
    ci->add_option("--horizon", ci_horizon, "Horizon T in phi(t,1/T) vs rho(t,1/T^2)");
    ci->add_option("--out", ci_out, "Write the table to this file instead of stdout");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Theoretical regret bound curves");
    std::string bounds_scenario = "gaussian9";
    double bounds_variance = 0.5;
    bounds->add_option("--scenario", bounds_scenario, "Builtin scenario name");
    bounds->add_option("--variance", bounds_variance, "Per-load reward variance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            RunFlags set;
            set.horizon = opt_horizon->count() > 0;
            set.reps = opt_reps->count() > 0;
            set.seed = opt_seed->count() > 0;
            set.stride = opt_stride->count() > 0;
            set.threads = opt_threads->count() > 0;
            set.out = opt_out->count() > 0;
            set.gamma = opt_gamma->count() > 0;
            set.xi = opt_xi->count() > 0;
            set.width = opt_width->count() > 0;
            return cmd_run(config_path, scenario, policies_csv, horizon, reps, seed, gamma, xi,
                           width, out, stride, threads, set);
        }
        if (scen->parsed()) return cmd_scenarios();
        if (sc->parsed())
            return cmd_sample_complexity(sc_mean, sc_capacity, sc_delta, sc_reps, sc_seed);
        if (ci->parsed()) return cmd_ci_compare(ci_horizon, ci_out);
        if (bounds->parsed()) return cmd_bounds(bounds_scenario, bounds_variance);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
