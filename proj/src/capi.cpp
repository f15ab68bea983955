#include "cohesion/cohesion.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "cohesion/dynamics.hpp"
#include "cohesion/error.hpp"
#include "cohesion/experiments.hpp"
#include "cohesion/generators.hpp"
#include "cohesion/metrics.hpp"
#include "cohesion/spectra.hpp"

#ifndef COHESION_VERSION
#define COHESION_VERSION "0.0.0"
#endif

struct cohesion_graph {
    cohesion::Graph graph;
    std::vector<std::string> labels;
};

namespace {

thread_local std::string last_error;

cohesion_status fail(cohesion_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

cohesion_status from_code(cohesion::ErrorCode code) {
    using cohesion::ErrorCode;
    switch (code) {
        case ErrorCode::parse: return COHESION_ERR_PARSE;
        case ErrorCode::validation: return COHESION_ERR_VALIDATION;
        case ErrorCode::domain: return COHESION_ERR_DOMAIN;
        case ErrorCode::resource: return COHESION_ERR_RESOURCE;
        case ErrorCode::convergence: return COHESION_ERR_CONVERGENCE;
        case ErrorCode::io: return COHESION_ERR_IO;
    }
    return COHESION_ERR_INTERNAL;
}

template <typename F>
cohesion_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return COHESION_OK;
    } catch (const cohesion::Error& e) {
        return fail(from_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(COHESION_ERR_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return fail(COHESION_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(COHESION_ERR_INTERNAL, "unknown error");
    }
}

bool to_kind(cohesion_kind k, cohesion::LaplacianKind& out) {
    switch (k) {
        case COHESION_KIND_BINARY: out = cohesion::LaplacianKind::binary; return true;
        case COHESION_KIND_ROWNORM: out = cohesion::LaplacianKind::row_normalized; return true;
        case COHESION_KIND_SYMNORM: out = cohesion::LaplacianKind::sym_normalized; return true;
    }
    return false;
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.data(), s.size() + 1);
    return p;
}

#define REQUIRE_ARG(cond, what) \
    if (!(cond)) return fail(COHESION_ERR_ARGUMENT, what)

#define REQUIRE_KIND(k, lk)                 \
    cohesion::LaplacianKind lk;             \
    if (!to_kind(k, lk)) return fail(COHESION_ERR_ARGUMENT, "unknown Laplacian kind")

}  // namespace

extern "C" {

const char* cohesion_version(void) { return COHESION_VERSION; }

const char* cohesion_status_name(cohesion_status status) {
    switch (status) {
        case COHESION_OK: return "ok";
        case COHESION_ERR_PARSE: return "parse error";
        case COHESION_ERR_VALIDATION: return "validation error";
        case COHESION_ERR_DOMAIN: return "domain error";
        case COHESION_ERR_RESOURCE: return "resource error";
        case COHESION_ERR_CONVERGENCE: return "convergence error";
        case COHESION_ERR_IO: return "I/O error";
        case COHESION_ERR_ARGUMENT: return "invalid argument";
        case COHESION_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* cohesion_last_error(void) { return last_error.c_str(); }

cohesion_status cohesion_kind_parse(const char* name, cohesion_kind* out) {
    REQUIRE_ARG(name && out, "null argument");
    return guarded([&] {
        switch (cohesion::parse_laplacian_kind(name)) {
            case cohesion::LaplacianKind::binary: *out = COHESION_KIND_BINARY; break;
            case cohesion::LaplacianKind::row_normalized: *out = COHESION_KIND_ROWNORM; break;
            case cohesion::LaplacianKind::sym_normalized: *out = COHESION_KIND_SYMNORM; break;
        }
    });
}

cohesion_status cohesion_graph_from_edge_list(const char* text, int directed, cohesion_tie_policy policy,
                                              cohesion_graph** out) {
    REQUIRE_ARG(text && out, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto lg = cohesion::parse_edge_list(text, directed != 0,
                                            policy == COHESION_TIES_ANY ? cohesion::TiePolicy::any
                                                                        : cohesion::TiePolicy::mutual);
        *out = new cohesion_graph{std::move(lg.graph), std::move(lg.labels)};
    });
}

cohesion_status cohesion_graph_read_file(const char* path, int directed, cohesion_tie_policy policy,
                                         cohesion_graph** out) {
    REQUIRE_ARG(path && out, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto lg = cohesion::read_edge_list_file(path, directed != 0,
                                                policy == COHESION_TIES_ANY ? cohesion::TiePolicy::any
                                                                            : cohesion::TiePolicy::mutual);
        *out = new cohesion_graph{std::move(lg.graph), std::move(lg.labels)};
    });
}

cohesion_status cohesion_graph_generate(const char* spec, uint64_t seed, cohesion_graph** out) {
    REQUIRE_ARG(spec && out, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new cohesion_graph{cohesion::generate(spec, seed), {}}; });
}

void cohesion_graph_free(cohesion_graph* g) { delete g; }

size_t cohesion_graph_node_count(const cohesion_graph* g) { return g ? g->graph.node_count() : 0; }

size_t cohesion_graph_edge_count(const cohesion_graph* g) { return g ? g->graph.edge_count() : 0; }

cohesion_status cohesion_graph_to_edge_list(const cohesion_graph* g, char** out) {
    REQUIRE_ARG(g && out, "null argument");
    return guarded([&] { *out = dup(cohesion::to_edge_list(g->graph, g->labels)); });
}

cohesion_status cohesion_graph_write_file(const cohesion_graph* g, const char* path) {
    REQUIRE_ARG(g && path, "null argument");
    return guarded([&] { cohesion::write_edge_list_file(path, g->graph, g->labels); });
}

cohesion_status cohesion_graph_component_count(const cohesion_graph* g, size_t* out) {
    REQUIRE_ARG(g && out, "null argument");
    return guarded([&] { *out = cohesion::connected_components(g->graph).count; });
}

cohesion_status cohesion_lambda2(const cohesion_graph* g, cohesion_kind kind, double* out) {
    REQUIRE_ARG(g && out, "null argument");
    REQUIRE_KIND(kind, lk);
    return guarded([&] { *out = cohesion::algebraic_connectivity(g->graph, lk); });
}

cohesion_status cohesion_spectrum(const cohesion_graph* g, cohesion_kind kind, double* values,
                                  size_t capacity) {
    REQUIRE_ARG(g && values, "null argument");
    REQUIRE_KIND(kind, lk);
    REQUIRE_ARG(capacity >= g->graph.node_count(), "capacity is smaller than the node count");
    return guarded([&] {
        const auto s = cohesion::laplacian_spectrum(g->graph, lk);
        std::copy(s.values.begin(), s.values.end(), values);
    });
}

cohesion_status cohesion_spectrum_csv(const cohesion_graph* g, cohesion_kind kind, char** out) {
    REQUIRE_ARG(g && out, "null argument");
    REQUIRE_KIND(kind, lk);
    return guarded([&] { *out = dup(cohesion::spectrum_csv(cohesion::laplacian_spectrum(g->graph, lk))); });
}

cohesion_status cohesion_laplacian_csv(const cohesion_graph* g, cohesion_kind kind, char** out) {
    REQUIRE_ARG(g && out, "null argument");
    REQUIRE_KIND(kind, lk);
    return guarded([&] { *out = dup(cohesion::matrix_csv(cohesion::laplacian(g->graph, lk), lk)); });
}

cohesion_status cohesion_bounds(const cohesion_graph* g, cohesion_bound_report* out) {
    REQUIRE_ARG(g && out, "null argument");
    return guarded([&] {
        const auto r = cohesion::bound_report(g->graph);
        *out = {r.n,
                r.lambda2,
                r.mean_distance,
                r.diameter,
                r.mean_distance_bound.value,
                r.mean_distance_bound.satisfied,
                r.diameter_bound.value,
                r.diameter_bound.satisfied,
                r.kappa,
                r.k_min,
                r.complete,
                r.lambda2_le_kappa,
                r.kappa_le_kmin,
                r.all_satisfied()};
    });
}

cohesion_status cohesion_distances(const cohesion_graph* g, cohesion_distance_summary* out) {
    REQUIRE_ARG(g && out, "null argument");
    return guarded([&] {
        const auto d = cohesion::distance_summary(g->graph);
        *out = {d.mean_distance, d.diameter, d.finite};
    });
}

cohesion_status cohesion_vertex_connectivity(const cohesion_graph* g, size_t* out) {
    REQUIRE_ARG(g && out, "null argument");
    return guarded([&] { *out = cohesion::vertex_connectivity(g->graph); });
}

cohesion_status cohesion_tradeoff_metrics(const cohesion_graph* g, cohesion_kind kind, double t,
                                          cohesion_tradeoff* out) {
    REQUIRE_ARG(g && out, "null argument");
    REQUIRE_KIND(kind, lk);
    return guarded([&] {
        const auto m = cohesion::tradeoff_metrics(g->graph, lk, t);
        *out = {m.t, m.Z, m.entropy, m.F, m.Q, m.V, m.eta};
    });
}

cohesion_status cohesion_diffuse(const cohesion_graph* g, cohesion_kind kind, const double* y0, size_t n,
                                 const double* times, size_t count, double* out) {
    REQUIRE_ARG(g && y0 && times && out, "null argument");
    REQUIRE_KIND(kind, lk);
    return guarded([&] {
        const auto tr = cohesion::diffuse_spectral(g->graph, lk, {y0, n}, {times, count});
        for (std::size_t i = 0; i < count; ++i) std::copy(tr.samples[i].begin(), tr.samples[i].end(), out + i * n);
    });
}

cohesion_status cohesion_convergence_time(const cohesion_graph* g, cohesion_kind kind, const double* y0,
                                          size_t n, double epsilon, double* out) {
    REQUIRE_ARG(g && y0 && out, "null argument");
    REQUIRE_KIND(kind, lk);
    return guarded([&] { *out = cohesion::convergence_time(g->graph, lk, {y0, n}, epsilon); });
}

cohesion_status cohesion_experiment_ids(char** out) {
    REQUIRE_ARG(out, "null argument");
    return guarded([&] {
        std::string s;
        for (const auto& id : cohesion::experiment_ids()) s += id + "\n";
        *out = dup(s);
    });
}

cohesion_status cohesion_run_experiment(const char* config_json, const char* out_dir, size_t workers,
                                        char** report_json, int* targets_met, double* wall_seconds) {
    REQUIRE_ARG(config_json, "null config");
    if (report_json) *report_json = nullptr;
    return guarded([&] {
        auto cfg = cohesion::ExperimentConfig::from_json(config_json);
        if (workers != 0) cfg.workers = workers;
        const auto result = cohesion::run_experiment(cfg);
        if (out_dir) cohesion::write_experiment(result, out_dir);
        if (targets_met) *targets_met = result.all_targets_met();
        if (wall_seconds) *wall_seconds = result.wall_seconds;
        if (report_json) *report_json = dup(result.report_json);
    });
}

void cohesion_string_free(char* s) { std::free(s); }

}  // extern "C"
