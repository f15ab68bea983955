#ifndef COHESION_EXPERIMENTS_HPP
#define COHESION_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohesion/spectra.hpp"

namespace cohesion {

/// Registered ids: table1, fig1, fig3, fig4a, fig4b, fig4c, fig4d, fig5,
/// appendix, centola.
const std::vector<std::string>& experiment_ids();

struct ExperimentConfig {
    std::string id;
    std::uint64_t seed = 1;
    std::size_t reps = 0;  // 0 = the experiment's default
    std::optional<LaplacianKind> kind;
    std::string params_json = "{}";  // experiment-specific overrides
    std::size_t workers = 0;         // not part of the report

    /// Config file form: {"experiment": .., "seed": .., "reps": ..,
    /// "kind": .., "params": {..}}. Unknown keys are a ValidationError.
    static ExperimentConfig from_json(std::string_view text);
};

struct TargetCheck {
    std::string name;
    double observed = 0.0;
    std::string expectation;  // human-readable, e.g. "0.0297 +/- 0.01"
    std::string anchor;
    bool pass = false;
};

struct ExperimentResult {
    std::string report_json;  // byte-stable for a given config
    std::map<std::string, std::string> files;  // extra outputs: name -> contents (CSV, SVG, edge lists)
    std::vector<TargetCheck> checks;
    double wall_seconds = 0.0;

    bool all_targets_met() const;
};

/// Throws DomainError for an unknown id.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes report.json, every extra file and timing.json into `dir`.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);

/// The targets document compiled into the library.
std::string_view targets_document();

}  // namespace cohesion

#endif
