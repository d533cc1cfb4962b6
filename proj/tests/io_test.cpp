#include "mpmab/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace mpmab;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig config;
    config.scenario = "bernoulli9";
    config.horizon = 400;
    config.replications = 2;
    config.seed = 5;
    config.policies = {{"orchexplore", PolicyParams{}}, {"optimal", PolicyParams{}}};
    return config;
}

}  // namespace

TEST_CASE("doubles render round-trip safe") {
    for (const double x : {0.1, 1.0 / 3.0, 5.7, 1e-17, 123456789.123456789}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("config json round trip drives identical traces") {
    const ExperimentConfig config = tiny_config();
    const std::string text = config_to_json_text(config);
    const ExperimentConfig loaded = config_from_json_text(text, "inline");
    CHECK(loaded.scenario == config.scenario);
    CHECK(loaded.horizon == config.horizon);
    CHECK(loaded.replications == config.replications);
    CHECK(loaded.seed == config.seed);
    REQUIRE(loaded.policies.size() == config.policies.size());

    const ExperimentResult a = run_experiment(config);
    const ExperimentResult b = run_experiment(loaded);
    CHECK(results_csv(a) == results_csv(b));
}

TEST_CASE("inline arm tables load with diagnostics") {
    const std::string good = R"({
      "arms": [
        {"mean": 0.9, "capacity": 1, "distribution": "bernoulli"},
        {"mean": 0.5, "capacity": 2, "distribution": "bernoulli"},
        {"mean": 0.3, "capacity": 1, "distribution": "bernoulli"}
      ],
      "plays": 2,
      "horizon": 50,
      "replications": 1,
      "policies": ["optimal"]
    })";
    const ExperimentConfig config = config_from_json_text(good, "inline");
    CHECK(config.arms.size() == 3);
    CHECK(config.plays == 2);
    const ExperimentResult result = run_experiment(config);
    CHECK(result.traces.size() == 1);

    // Field-level diagnostics name the offending entry.
    const std::string missing_mean = R"({"arms": [{"capacity": 1}], "plays": 1})";
    try {
        config_from_json_text(missing_mean, "doc");
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("doc.arms[0].mean") != std::string::npos);
    }

    const std::string bad_policy = R"({"scenario": "bernoulli9", "policies": ["warp"]})";
    try {
        config_from_json_text(bad_policy, "doc");
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("doc.policies[0]") != std::string::npos);
        CHECK(std::string(e.what()).find("orchexplore") != std::string::npos);
    }

    CHECK_THROWS_AS(config_from_json_text("{not json", "doc"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json_text(R"({"horizon": 10})", "doc"), std::invalid_argument);
}

TEST_CASE("csv layout and determinism") {
    const ExperimentConfig config = tiny_config();
    const ExperimentResult result = run_experiment(config);
    const std::string csv = results_csv(result);

    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    // Header plus |policies| x |slots| rows.
    CHECK(lines == 1 + result.traces.size() * result.slots.size());
    CHECK(csv.rfind("policy,t,mean_regret,std_regret,optimal_action_freq\n", 0) == 0);

    const ExperimentResult again = run_experiment(config);
    CHECK(results_csv(again) == csv);
}

TEST_CASE("serialized files land on disk and reload") {
    const ExperimentConfig config = tiny_config();
    const ExperimentResult result = run_experiment(config);
    const std::string prefix = "/tmp/mpmab_io_test_out";
    const std::string csv_path = serialize_results(result, prefix);
    CHECK(csv_path == prefix + ".csv");

    std::ifstream csv(csv_path);
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "policy,t,mean_regret,std_regret,optimal_action_freq");

    std::ifstream side(prefix + ".json");
    REQUIRE(side.good());
    std::string all((std::istreambuf_iterator<char>(side)), std::istreambuf_iterator<char>());
    CHECK(all.find("scenario_hash") != std::string::npos);
    CHECK(all.find("\"f_star\": 5.7") != std::string::npos);
    std::remove(csv_path.c_str());
    std::remove((prefix + ".json").c_str());

    CHECK_THROWS(serialize_results(result, "/nonexistent_dir_xyz/out"));
}
