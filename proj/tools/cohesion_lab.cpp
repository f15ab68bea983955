// cohesion-lab: command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohesion/cohesion.h"

namespace {

using json = nlohmann::json;

enum Exit { kOk = 0, kTargetMiss = 1, kIo = 2, kUsage = 3 };

struct Failure {
    int exit_code;
    std::string message;
};

int exit_for(cohesion_status s) { return s == COHESION_ERR_IO ? kIo : kUsage; }

void check(cohesion_status s) {
    if (s != COHESION_OK) throw Failure{exit_for(s), std::string(cohesion_status_name(s)) + ": " + cohesion_last_error()};
}

struct GraphDeleter {
    void operator()(cohesion_graph* g) const { cohesion_graph_free(g); }
};
using GraphPtr = std::unique_ptr<cohesion_graph, GraphDeleter>;

std::string take(char* s) {
    std::string out = s ? s : "";
    cohesion_string_free(s);
    return out;
}

std::string fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

std::string full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

cohesion_kind kind_of(const std::string& name) {
    cohesion_kind k;
    check(cohesion_kind_parse(name.c_str(), &k));
    return k;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw Failure{kIo, "cannot write `" + path + "`"};
}

// Graph source shared by spectra and generate.
struct GraphSource {
    std::string file;
    std::string gen;
    std::uint64_t seed = 1;
    bool directed = false;
    std::string ties = "mutual";

    void add_to(CLI::App* cmd, bool allow_file) {
        if (allow_file) {
            auto* f = cmd->add_option("--graph", file, "edge-list file");
            auto* g = cmd->add_option("--gen", gen, "generator spec, e.g. clique:24 or ring_lattice:24,4");
            f->excludes(g);
            cmd->add_flag("--directed", directed, "read the file as directed ties");
            cmd->add_option("--ties", ties, "symmetrization of directed ties")
                ->check(CLI::IsMember({"mutual", "any"}));
        } else {
            cmd->add_option("--gen", gen, "generator spec")->required();
        }
        cmd->add_option("--seed", seed, "seed for random generators");
    }

    GraphPtr load() const {
        cohesion_graph* g = nullptr;
        if (!file.empty()) {
            check(cohesion_graph_read_file(file.c_str(), directed,
                                           ties == "any" ? COHESION_TIES_ANY : COHESION_TIES_MUTUAL, &g));
        } else if (!gen.empty()) {
            check(cohesion_graph_generate(gen.c_str(), seed, &g));
        } else {
            throw Failure{kUsage, "give --graph FILE or --gen SPEC"};
        }
        return GraphPtr(g);
    }
};

int cmd_spectra(const GraphSource& src, const std::string& kind_name, bool bounds, bool print_spectrum,
                const std::string& spectrum_file) {
    const GraphPtr g = src.load();
    const cohesion_kind kind = kind_of(kind_name);
    size_t components = 0;
    check(cohesion_graph_component_count(g.get(), &components));
    std::cout << "nodes " << cohesion_graph_node_count(g.get()) << ", ties " << cohesion_graph_edge_count(g.get())
              << ", components " << components << "\n";
    double l2 = 0;
    check(cohesion_lambda2(g.get(), kind, &l2));
    std::cout << "lambda2 (" << kind_name << ") = " << fixed(l2, 4) << "  [" << full(l2) << "]\n";

    if (print_spectrum || !spectrum_file.empty()) {
        char* csv = nullptr;
        check(cohesion_spectrum_csv(g.get(), kind, &csv));
        const std::string text = take(csv);
        if (print_spectrum) std::cout << text;
        if (!spectrum_file.empty()) write_text(spectrum_file, text);
    }
    if (!bounds) return kOk;
    if (components != 1) {
        throw Failure{kUsage, "bounds refused: the graph is disconnected (" + std::to_string(components) +
                                  " components)"};
    }
    cohesion_bound_report r;
    check(cohesion_bounds(g.get(), &r));
    auto verdict = [](int ok) { return ok ? "holds" : "VIOLATED"; };
    std::cout << "binary lambda2 = " << full(r.lambda2) << "\n"
              << "mean distance = " << full(r.mean_distance) << ", diameter = " << r.diameter << "\n"
              << "lambda2 >= " << full(r.mean_distance_bound) << " (mean-distance bound): "
              << verdict(r.mean_distance_bound_ok) << "\n"
              << "lambda2 >= " << full(r.diameter_bound) << " (diameter bound): " << verdict(r.diameter_bound_ok)
              << "\n";
    if (r.complete) {
        std::cout << "complete graph: cut comparisons skipped\n";
    } else {
        std::cout << "lambda2 <= kappa = " << r.kappa << ": " << verdict(r.lambda2_le_kappa) << "\n"
                  << "kappa <= k_min = " << r.k_min << ": " << verdict(r.kappa_le_kmin) << "\n";
    }
    std::cout << (r.all_ok ? "all bounds hold\n" : "bound violated\n");
    return kOk;
}

int cmd_generate(const GraphSource& src, const std::string& out) {
    const GraphPtr g = src.load();
    if (out.empty()) {
        char* text = nullptr;
        check(cohesion_graph_to_edge_list(g.get(), &text));
        std::cout << take(text);
    } else {
        check(cohesion_graph_write_file(g.get(), out.c_str()));
    }
    return kOk;
}

// Options common to every experiment subcommand.
struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::optional<std::string> kind;
    std::string out;
    std::string config;
    std::size_t workers = 0;
    std::vector<std::string> params;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--reps", reps, "replications (0 = experiment default)");
        cmd->add_option("--kind", kind, "Laplacian kind: binary, rownorm or symnorm");
        cmd->add_option("--out", out, "output directory (default results/<id>)");
        cmd->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
        cmd->add_option("--workers", workers, "worker threads (0 = all cores)");
        cmd->add_option("--param", params, "experiment parameter as key=value (value in JSON)");
    }
};

json read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Failure{kIo, "cannot read `" + path + "`"};
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw Failure{kUsage, "config `" + path + "`: " + e.what()};
    }
}

int cmd_experiment(const std::string& id, const RunOptions& opt) {
    json cfg = opt.config.empty() ? json::object() : read_config(opt.config);
    if (!cfg.is_object()) throw Failure{kUsage, "config must be a JSON object"};
    if (cfg.contains("experiment") && cfg["experiment"] != id)
        throw Failure{kUsage, "config is for `" + cfg["experiment"].dump() + "`, not `" + id + "`"};
    cfg["experiment"] = id;
    if (opt.seed) cfg["seed"] = *opt.seed;
    if (opt.reps) cfg["reps"] = *opt.reps;
    if (opt.kind) cfg["kind"] = *opt.kind;
    for (const auto& kv : opt.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw Failure{kUsage, "--param expects key=value, got `" + kv + "`"};
        const std::string key = kv.substr(0, eq), raw = kv.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw;  // bare strings such as exponential:1
        }
        cfg["params"][key] = value;
    }
    std::string out = opt.out;
    if (out.empty()) out = cfg.contains("out") ? cfg["out"].get<std::string>() : "results/" + id;

    char* report = nullptr;
    int met = 0;
    double seconds = 0;
    check(cohesion_run_experiment(cfg.dump().c_str(), out.c_str(), opt.workers, &report, &met, &seconds));
    const json doc = json::parse(take(report));
    for (const auto& t : doc["targets"]) {
        std::cout << (t["pass"].get<bool>() ? "PASS " : "MISS ") << t["name"].get<std::string>() << ": observed "
                  << full(t["observed"].get<double>()) << ", expected " << t["expected"].get<std::string>() << "\n";
    }
    std::cout << id << ": " << (met ? "all targets met" : "target miss") << "; outputs in " << out << "\n";
    std::cerr << id << " finished in " << fixed(seconds, 2) << " s\n";
    return met ? kOk : kTargetMiss;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral network-cohesion lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cohesion_version()));

    GraphSource spectra_src;
    std::string kind = "binary";
    bool bounds = false, print_spectrum = false;
    std::string spectrum_file;
    auto* spectra = app.add_subcommand("spectra", "lambda2, spectrum and bound checks of one graph");
    spectra_src.add_to(spectra, true);
    spectra->add_option("--kind", kind, "Laplacian kind: binary, rownorm or symnorm");
    spectra->add_flag("--bounds", bounds, "check the distance and cut bounds (binary Laplacian)");
    spectra->add_flag("--print-spectrum", print_spectrum, "print the eigenpairs as CSV");
    spectra->add_option("--spectrum-csv", spectrum_file, "write the eigenpairs to a CSV file");

    GraphSource gen_src;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "write a generated graph as an edge list");
    gen_src.add_to(generate, false);
    generate->add_option("--out", gen_out, "output file (default stdout)");

    RunOptions table1_opt, figures_opt, appendix_opt, centola_opt;
    std::string figure_id;
    auto* table1 = app.add_subcommand("table1", "coloring-network statistics and learning-curve fit");
    table1_opt.add_to(table1);
    auto* figures = app.add_subcommand("figures", "data behind one figure");
    figures->add_option("id", figure_id, "fig1, fig3, fig4a, fig4b, fig4c, fig4d or fig5")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig3", "fig4a", "fig4b", "fig4c", "fig4d", "fig5"}));
    figures_opt.add_to(figures);
    auto* appendix = app.add_subcommand("appendix", "memory-convergence protocol");
    appendix_opt.add_to(appendix);
    auto* centola = app.add_subcommand("centola", "lambda2 of the convention-experiment networks");
    centola_opt.add_to(centola);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*spectra) return cmd_spectra(spectra_src, kind, bounds, print_spectrum, spectrum_file);
        if (*generate) return cmd_generate(gen_src, gen_out);
        if (*table1) return cmd_experiment("table1", table1_opt);
        if (*figures) return cmd_experiment(figure_id, figures_opt);
        if (*appendix) return cmd_experiment("appendix", appendix_opt);
        if (*centola) return cmd_experiment("centola", centola_opt);
    } catch (const Failure& f) {
        std::cerr << "cohesion-lab: " << f.message << "\n";
        return f.exit_code;
    }
    return kUsage;
}
