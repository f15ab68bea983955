#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "cohesion/cohesion.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    cohesion_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("generated clique through the handle API") {
    cohesion_graph* g = nullptr;
    REQUIRE(cohesion_graph_generate("clique:24", 0, &g) == COHESION_OK);
    CHECK(cohesion_graph_node_count(g) == 24);
    CHECK(cohesion_graph_edge_count(g) == 276);
    double l2 = 0;
    REQUIRE(cohesion_lambda2(g, COHESION_KIND_ROWNORM, &l2) == COHESION_OK);
    CHECK(std::abs(l2 - 24.0 / 23.0) < 1e-10);
    std::vector<double> values(24);
    REQUIRE(cohesion_spectrum(g, COHESION_KIND_BINARY, values.data(), values.size()) == COHESION_OK);
    CHECK(std::abs(values[0]) < 1e-9);
    CHECK(std::abs(values[23] - 24.0) < 1e-9);
    cohesion_graph_free(g);
}

TEST_CASE("edge list round trip keeps labels") {
    cohesion_graph* g = nullptr;
    REQUIRE(cohesion_graph_from_edge_list("a b\nb c\nc a\nc d\n", 0, COHESION_TIES_MUTUAL, &g) == COHESION_OK);
    char* text = nullptr;
    REQUIRE(cohesion_graph_to_edge_list(g, &text) == COHESION_OK);
    const std::string s = take(text);
    CHECK(s.find("a") != std::string::npos);
    cohesion_graph* h = nullptr;
    REQUIRE(cohesion_graph_from_edge_list(s.c_str(), 0, COHESION_TIES_MUTUAL, &h) == COHESION_OK);
    char* again = nullptr;
    REQUIRE(cohesion_graph_to_edge_list(h, &again) == COHESION_OK);
    CHECK(take(again) == s);
    size_t kappa = 0;
    REQUIRE(cohesion_vertex_connectivity(g, &kappa) == COHESION_OK);
    CHECK(kappa == 1);
    cohesion_distance_summary d;
    REQUIRE(cohesion_distances(g, &d) == COHESION_OK);
    CHECK(d.finite == 1);
    CHECK(d.diameter == 2);
    cohesion_graph_free(g);
    cohesion_graph_free(h);
}

TEST_CASE("errors carry a status and a message") {
    cohesion_graph* g = nullptr;
    CHECK(cohesion_graph_generate("nonsense:3", 0, &g) != COHESION_OK);
    CHECK(g == nullptr);
    CHECK(std::strlen(cohesion_last_error()) > 0);
    CHECK(cohesion_graph_from_edge_list("0 0\n", 0, COHESION_TIES_MUTUAL, &g) == COHESION_ERR_VALIDATION);
    CHECK(cohesion_graph_from_edge_list("0 x y z\n", 0, COHESION_TIES_MUTUAL, &g) == COHESION_ERR_PARSE);
    CHECK(cohesion_graph_read_file("/nonexistent/graph.txt", 0, COHESION_TIES_MUTUAL, &g) == COHESION_ERR_IO);
    CHECK(cohesion_lambda2(nullptr, COHESION_KIND_BINARY, nullptr) == COHESION_ERR_ARGUMENT);

    REQUIRE(cohesion_graph_generate("cycle:5", 0, &g) == COHESION_OK);
    double l2;
    CHECK(cohesion_lambda2(g, static_cast<cohesion_kind>(9), &l2) == COHESION_ERR_ARGUMENT);
    CHECK(cohesion_lambda2(g, COHESION_KIND_BINARY, &l2) == COHESION_OK);
    CHECK(std::strlen(cohesion_last_error()) == 0);
    cohesion_graph_free(g);
}

TEST_CASE("bounds are refused on disconnected graphs") {
    cohesion_graph* g = nullptr;
    REQUIRE(cohesion_graph_from_edge_list("0 1\n2 3\n", 0, COHESION_TIES_MUTUAL, &g) == COHESION_OK);
    size_t comps = 0;
    REQUIRE(cohesion_graph_component_count(g, &comps) == COHESION_OK);
    CHECK(comps == 2);
    double l2 = -1;
    REQUIRE(cohesion_lambda2(g, COHESION_KIND_BINARY, &l2) == COHESION_OK);
    CHECK(l2 == 0.0);
    cohesion_bound_report r;
    CHECK(cohesion_bounds(g, &r) == COHESION_ERR_DOMAIN);
    cohesion_graph_free(g);
}

TEST_CASE("diffusion and trade-off through the C API") {
    cohesion_graph* g = nullptr;
    REQUIRE(cohesion_graph_generate("path:4", 0, &g) == COHESION_OK);
    const double y0[4] = {1, 0, 0, 0};
    const double times[2] = {0.0, 50.0};
    double out[8];
    REQUIRE(cohesion_diffuse(g, COHESION_KIND_BINARY, y0, 4, times, 2, out) == COHESION_OK);
    CHECK(out[0] == 1.0);
    for (int i = 4; i < 8; ++i) CHECK(std::abs(out[i] - 0.25) < 1e-9);
    double t = 0;
    REQUIRE(cohesion_convergence_time(g, COHESION_KIND_BINARY, y0, 4, 1e-3, &t) == COHESION_OK);
    CHECK(t > 0);
    CHECK(cohesion_convergence_time(g, COHESION_KIND_SYMNORM, y0, 4, 1e-3, &t) == COHESION_ERR_DOMAIN);
    cohesion_tradeoff m;
    REQUIRE(cohesion_tradeoff_metrics(g, COHESION_KIND_BINARY, 1.0, &m) == COHESION_OK);
    CHECK(m.Z > 0);
    CHECK(m.Q <= 0);
    cohesion_graph_free(g);
}

TEST_CASE("experiments through the C API") {
    char* ids = nullptr;
    REQUIRE(cohesion_experiment_ids(&ids) == COHESION_OK);
    CHECK(take(ids).find("appendix\n") != std::string::npos);

    char* report = nullptr;
    int met = -1;
    REQUIRE(cohesion_run_experiment(R"({"experiment": "fig4c", "params": {"k_max": 6, "k_check": 6}})", nullptr, 2,
                                    &report, &met, nullptr) == COHESION_OK);
    const std::string r = take(report);
    CHECK(r.find("\"fig4c.r2\"") != std::string::npos);
    CHECK(met == 1);

    CHECK(cohesion_run_experiment(R"({"experiment": "fig9"})", nullptr, 1, &report, &met, nullptr) ==
          COHESION_ERR_DOMAIN);
    CHECK(report == nullptr);
    CHECK(cohesion_run_experiment("{", nullptr, 1, &report, nullptr, nullptr) == COHESION_ERR_PARSE);
    CHECK(cohesion_run_experiment(R"({"experiment": "fig4d", "bogus": 1})", nullptr, 1, &report, nullptr,
                                  nullptr) == COHESION_ERR_VALIDATION);
}
