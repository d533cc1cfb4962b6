#include "mpmab/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mpmab/policies/registry.hpp"

namespace mpmab {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[40];
    const int len = std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(len));
}

namespace {

WidthKind width_from_string(const std::string& s, const std::string& where) {
    if (s == "uci") return WidthKind::Uci;
    if (s == "hfd") return WidthKind::Hfd;
    throw std::invalid_argument(where + ": width must be 'uci' or 'hfd', got '" + s + "'");
}

std::string width_to_string(WidthKind w) { return w == WidthKind::Uci ? "uci" : "hfd"; }

ArmSpec arm_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument(where + ": each arm must be an object");
    ArmSpec arm;
    if (!j.contains("mean")) throw std::invalid_argument(where + ".mean: missing");
    arm.mean = j.at("mean").get<double>();
    if (!j.contains("capacity")) throw std::invalid_argument(where + ".capacity: missing");
    arm.capacity = j.at("capacity").get<int>();
    const std::string dist = j.value("distribution", std::string("bernoulli"));
    const auto kind = reward_kind_from_string(dist);
    if (!kind)
        throw std::invalid_argument(where + ".distribution: expected 'bernoulli' or 'gaussian', got '" +
                                    dist + "'");
    arm.kind = *kind;
    arm.variance = j.value("variance", 0.0);
    return arm;
}

json arm_to_json(const ArmSpec& arm) {
    json j;
    j["mean"] = arm.mean;
    j["capacity"] = arm.capacity;
    j["distribution"] = to_string(arm.kind);
    if (arm.kind == RewardKind::Gaussian) j["variance"] = arm.variance;
    return j;
}

PolicySpec policy_from_json(const json& j, const std::string& where) {
    PolicySpec spec;
    if (j.is_string()) {
        spec.name = j.get<std::string>();
    } else if (j.is_object()) {
        if (!j.contains("name")) throw std::invalid_argument(where + ".name: missing");
        spec.name = j.at("name").get<std::string>();
        spec.params.gamma = j.value("gamma", 1.0);
        spec.params.xi = j.value("xi", 1.0);
        spec.params.delta_override = j.value("delta", 0.0);
        if (j.contains("width"))
            spec.params.width = width_from_string(j.at("width").get<std::string>(), where + ".width");
        spec.params.action_space_cap = j.value("action_cap", std::uint64_t{1'000'000});
    } else {
        throw std::invalid_argument(where + ": policy must be a name or an object");
    }
    if (!is_registered_policy(spec.name)) {
        std::string known;
        for (const auto& p : registered_policies()) {
            if (!known.empty()) known += ", ";
            known += p;
        }
        throw std::invalid_argument(where + ": unknown policy '" + spec.name +
                                    "'; registered policies: " + known);
    }
    return spec;
}

json policy_to_json(const PolicySpec& spec) {
    json j;
    j["name"] = spec.name;
    j["gamma"] = spec.params.gamma;
    j["xi"] = spec.params.xi;
    j["delta"] = spec.params.delta_override;
    j["width"] = width_to_string(spec.params.width);
    j["action_cap"] = spec.params.action_space_cap;
    return j;
}

json config_to_json(const ExperimentConfig& config) {
    json j;
    if (!config.scenario.empty()) j["scenario"] = config.scenario;
    if (!config.arms.empty()) {
        json arms = json::array();
        for (const ArmSpec& arm : config.arms) arms.push_back(arm_to_json(arm));
        j["arms"] = arms;
        j["plays"] = config.plays;
    }
    j["horizon"] = config.horizon;
    j["replications"] = config.replications;
    j["seed"] = config.seed;
    j["stride"] = config.stride;
    j["threads"] = config.threads;
    if (!config.out.empty()) j["out"] = config.out;
    json policies = json::array();
    for (const PolicySpec& spec : config.policies) policies.push_back(policy_to_json(spec));
    j["policies"] = policies;
    return j;
}

ExperimentConfig config_from_json(const json& j, const std::string& origin) {
    if (!j.is_object()) throw std::invalid_argument(origin + ": config root must be an object");
    ExperimentConfig config;
    config.scenario = j.value("scenario", std::string());
    if (j.contains("arms")) {
        const json& arms = j.at("arms");
        if (!arms.is_array()) throw std::invalid_argument(origin + ".arms: must be an array");
        for (std::size_t i = 0; i < arms.size(); ++i)
            config.arms.push_back(
                arm_from_json(arms[i], origin + ".arms[" + std::to_string(i) + "]"));
        if (!j.contains("plays")) throw std::invalid_argument(origin + ".plays: required with arms");
        config.plays = j.at("plays").get<int>();
    }
    if (config.scenario.empty() && config.arms.empty())
        throw std::invalid_argument(origin + ": needs 'scenario' or 'arms'");
    config.horizon = j.value("horizon", std::int64_t{100000});
    if (config.horizon < 0) throw std::invalid_argument(origin + ".horizon: must be >= 0");
    config.replications = j.value("replications", 200);
    if (config.replications < 1) throw std::invalid_argument(origin + ".replications: must be >= 1");
    config.seed = j.value("seed", std::uint64_t{0});
    config.stride = j.value("stride", std::int64_t{0});
    config.threads = j.value("threads", 0);
    config.out = j.value("out", std::string());
    if (j.contains("policies")) {
        const json& policies = j.at("policies");
        if (!policies.is_array()) throw std::invalid_argument(origin + ".policies: must be an array");
        for (std::size_t i = 0; i < policies.size(); ++i)
            config.policies.push_back(
                policy_from_json(policies[i], origin + ".policies[" + std::to_string(i) + "]"));
    }
    return config;
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(origin + ": " + e.what());
    }
    return config_from_json(j, origin);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str(), path);
}

std::string config_to_json_text(const ExperimentConfig& config) {
    return config_to_json(config).dump(2);
}

std::string results_csv(const ExperimentResult& result) {
    std::string out = "policy,t,mean_regret,std_regret,optimal_action_freq\n";
    for (const RegretTrace& trace : result.traces) {
        if (!trace.error.empty()) continue;
        for (std::size_t p = 0; p < result.slots.size(); ++p) {
            out += trace.policy;
            out += ',';
            out += std::to_string(result.slots[p]);
            out += ',';
            out += format_double(trace.mean_regret[p]);
            out += ',';
            out += format_double(trace.std_regret[p]);
            out += ',';
            out += format_double(trace.optimal_action_freq[p]);
            out += '\n';
        }
    }
    return out;
}

std::string serialize_results(const ExperimentResult& result, const std::string& prefix) {
    const std::string csv_path = prefix + ".csv";
    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write '" + csv_path + "'");
        csv << results_csv(result);
    }

    json sidecar;
    sidecar["version"] = kVersion;
    sidecar["config"] = config_to_json(result.config);
    sidecar["scenario_hash"] = result.scenario_hash;
    sidecar["f_star"] = result.f_star;
    sidecar["optimal_action"] = result.optimal.counts;
    sidecar["top_arm_count"] = result.top_arm_count;
    {
        std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        sidecar["generated_at"] = stamp;
    }
    json policies = json::array();
    for (const RegretTrace& trace : result.traces) {
        json p;
        p["policy"] = trace.policy;
        if (trace.error.empty()) {
            p["final_mean_regret"] = trace.mean_regret.empty() ? 0.0 : trace.mean_regret.back();
            p["final_std_regret"] = trace.std_regret.empty() ? 0.0 : trace.std_regret.back();
            p["final_window_optimal_freq"] = trace.final_window_optimal_freq;
        } else {
            p["error"] = trace.error;
        }
        policies.push_back(p);
    }
    sidecar["policies"] = policies;

    const std::string json_path = prefix + ".json";
    std::ofstream side(json_path, std::ios::binary);
    if (!side) throw std::runtime_error("cannot write '" + json_path + "'");
    side << sidecar.dump(2) << "\n";
    return csv_path;
}

}  // namespace mpmab
