#ifndef COHESION_DYNAMICS_HPP
#define COHESION_DYNAMICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohesion/graph.hpp"
#include "cohesion/spectra.hpp"

namespace cohesion {

/// max(y) - min(y); 0 for an empty vector.
double spread(std::span<const double> y);

struct Trajectory {
    std::string method;  // "spectral", "stepped" or "rounds"
    std::vector<double> times;
    std::vector<std::vector<double>> samples;  // samples[i] is y at times[i]
    /// Expansion coefficients of y0 in the orthonormal eigenbasis of the
    /// symmetric operator (L, or L_nor for the normalized kinds). Spectral only.
    std::vector<double> coefficients;
    bool disconnected = false;  // each component settles on its own equilibrium

    std::vector<double> spreads() const;
};

/// Exact solution y_t = exp(-L t) y0 through the eigenexpansion. t = 0
/// returns y0 unchanged.
Trajectory diffuse_spectral(const Graph& g, LaplacianKind kind, std::span<const double> y0,
                            std::span<const double> times);

/// Classic RK4 on dy/dt = -S L y with S = diag(s), sampled at every step.
/// The step is shrunk so that t_end is hit exactly; dt must stay below
/// 2 / (max s * lambda_max).
Trajectory diffuse_stepped(const Graph& g, LaplacianKind kind, std::span<const double> s,
                           std::span<const double> y0, double t_end, double dt);

/// Largest stable step for diffuse_stepped.
double stability_bound(const Graph& g, LaplacianKind kind, std::span<const double> s);

/// Smallest t (to 1e-6) with spread(y_t) < epsilon. Consensus dynamics only:
/// binary and row_normalized kinds, connected graphs.
double convergence_time(const Graph& g, LaplacianKind kind, std::span<const double> y0,
                        double epsilon);

/// One round of a switching-topology protocol. A matching round lists
/// disjoint pairs; a subgraph round lists arbitrary ties.
struct Round {
    std::vector<std::pair<Node, Node>> pairs;
    bool subgraph = false;
};

struct RoundSchedule {
    std::size_t n = 0;
    std::vector<Round> rounds;

    /// Throws ValidationError for bad indices, self-pairs or overlapping
    /// pairs in a matching round.
    void validate() const;
};

/// `{"n": 4, "rounds": [[[0,1],[2,3]], {"subgraph": true, "pairs": [[0,1],[1,2]]}]}`
RoundSchedule parse_round_schedule(std::string_view json);
std::string round_schedule_json(const RoundSchedule& schedule);

struct RoundRule {
    enum class Kind { pair_average, exponential };
    Kind kind = Kind::pair_average;
    double t_round = 1.0;  // exponential only

    std::string name() const;
};

RoundRule parse_round_rule(std::string_view text);  // "pair_average" or "exponential:<t>"

/// Applies the rounds in order; sample i is the state after round i (sample 0 = y0).
/// pair_average replaces each tie's component by its mean; exponential applies
/// exp(-L_round t_round) with the binary Laplacian of the round's ties.
Trajectory run_rounds(const RoundSchedule& schedule, std::span<const double> y0, RoundRule rule);

struct MemoryProtocol {
    std::string name;
    RoundSchedule treatment1;
    RoundSchedule treatment2;
};

/// Four 4-node clusters (nodes 4c..4c+3). Treatment 1: one inter-cluster
/// perfect matching, then the three within-cluster round-robin matchings.
/// Treatment 2: the same rounds with the inter-cluster one last.
MemoryProtocol four_cluster_protocol();

struct MemoryResult {
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    std::string rule;
    double mean_sd1 = 0.0;
    double mean_sd2 = 0.0;
    double mean_difference = 0.0;  // mean of sd(treatment 2) - sd(treatment 1)
    double standard_error = 0.0;
};

/// Population standard deviation (divides by n).
double population_sd(std::span<const double> y);

/// Each replication draws y0 in {0,1}^n by fair coin from the stream
/// (seed, rep) and runs both treatments from it. Output does not depend on
/// `workers`.
MemoryResult memory_experiment(std::size_t reps, std::uint64_t seed,
                               const MemoryProtocol& protocol, RoundRule rule,
                               std::size_t workers = 1);

/// `t,y_0,...,y_{n-1},spread` rows.
std::string trajectory_csv(const Trajectory& trajectory);

}  // namespace cohesion

#endif
