#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cohesion/error.hpp"
#include "cohesion/experiments.hpp"

using namespace cohesion;
using json = nlohmann::json;

namespace {

ExperimentConfig config(const std::string& id, std::size_t reps = 0, std::string params = "{}") {
    ExperimentConfig c;
    c.id = id;
    c.reps = reps;
    c.params_json = std::move(params);
    return c;
}

const TargetCheck* find(const ExperimentResult& r, const std::string& name) {
    auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const TargetCheck& c) { return c.name == name; });
    return it == r.checks.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("registered ids") {
    const auto& ids = experiment_ids();
    for (const char* id : {"table1", "fig1", "fig3", "fig4a", "fig4b", "fig4c", "fig4d", "fig5", "appendix", "centola"})
        CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    CHECK_THROWS_AS(run_experiment(config("fig2")), DomainError);
}

TEST_CASE("targets document is valid and complete") {
    const json doc = json::parse(targets_document());
    CHECK(doc.at("version") == 1);
    CHECK(doc.at("inputs").at("coloring_t").size() == 6);
    for (const auto& [name, t] : doc.at("targets").items()) {
        CAPTURE(name);
        CHECK(t.contains("mode"));
        CHECK(t.contains("anchor"));
    }
}

TEST_CASE("config parsing") {
    auto c = ExperimentConfig::from_json(
        R"({"experiment": "appendix", "seed": 7, "reps": 12, "kind": "rownorm", "params": {"rule": "exponential:1"}})");
    CHECK(c.id == "appendix");
    CHECK(c.seed == 7);
    CHECK(c.reps == 12);
    CHECK(c.kind == LaplacianKind::row_normalized);
    CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"experiment": "appendix", "sed": 7})"), ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"seed": "seven"})"), ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json("[1"), ParseError);
    CHECK_THROWS_AS(run_experiment(config("fig4d", 0, R"({"l_maximum": 9})")), ValidationError);
    CHECK_THROWS_AS(run_experiment(config("table1", 2, R"({"p_list": [1.5]})")), ValidationError);
}

TEST_CASE("report echoes the config and is independent of the worker count") {
    auto c = config("appendix", 400);
    c.seed = 11;
    c.workers = 1;
    const auto a = run_experiment(c);
    c.workers = 4;
    const auto b = run_experiment(c);
    CHECK(a.report_json == b.report_json);
    CHECK(a.files == b.files);
    const json doc = json::parse(a.report_json);
    CHECK(doc["config"]["seed"] == 11);
    CHECK(doc["config"]["reps"] == 400);
    CHECK(doc["config"]["params"]["rule"] == "pair_average");
    CHECK(a.report_json.find("wall") == std::string::npos);
}

TEST_CASE("deterministic experiments report their checks") {
    const auto c = run_experiment(config("fig4c", 0, R"({"k_max": 8, "k_check": 8})"));
    REQUIRE(find(c, "fig4c.kappa_equals_k"));
    CHECK(find(c, "fig4c.kappa_equals_k")->pass);
    const auto d = run_experiment(config("fig4d"));
    const json doc = json::parse(d.report_json);
    CHECK(doc["results"]["increasing_within_parity"] == true);
    CHECK(d.files.count("fig4d.csv") == 1);
    CHECK(d.files.count("fig4d.svg") == 1);
}

TEST_CASE("small table1 run keeps the deterministic row exact") {
    const auto r = run_experiment(config("table1", 3, R"({"p_list": [0, 0.1, 1]})"));
    for (const char* name : {"table1.p=0.lambda2", "table1.p=0.mean_distance", "table1.p=0.kappa"}) {
        CAPTURE(name);
        REQUIRE(find(r, name));
        CHECK(find(r, name)->pass);
    }
    const json doc = json::parse(r.report_json);
    CHECK(doc["results"]["rows"].size() == 3);
    CHECK(doc["results"]["rows"][0]["lambda2"]["se"] == 0.0);
    CHECK(doc["results"]["fits"]["nls"]["params"]["b"] > 0);
}

TEST_CASE("outputs are written to disk") {
    const auto dir = std::filesystem::temp_directory_path() / "cohesion_test_experiments";
    std::filesystem::remove_all(dir);
    const auto r = run_experiment(config("centola", 20));
    write_experiment(r, dir);
    for (const char* f : {"report.json", "centola.csv", "timing.json"}) CHECK(std::filesystem::exists(dir / f));
    std::ifstream in(dir / "report.json");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == r.report_json);
    std::filesystem::remove_all(dir);
}
