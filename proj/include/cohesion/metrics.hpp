#ifndef COHESION_METRICS_HPP
#define COHESION_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cohesion/graph.hpp"

namespace cohesion {

/// Fraction of the n(n-1)/2 possible ties present (unweighted count).
double density(const Graph& g);

struct Components {
    std::size_t count = 0;
    std::vector<std::size_t> label;  // component id per node, ids in order of first node
};

Components connected_components(const Graph& g);
bool is_connected(const Graph& g);

/// Hop-count distances; weights are ignored.
struct DistanceSummary {
    double mean_distance = 0.0;  // over unordered pairs
    std::size_t diameter = 0;
    bool finite = true;  // false when the graph is disconnected
};

DistanceSummary distance_summary(const Graph& g);

/// Hop distances from `source`; unreachable nodes get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, Node source);

/// Maximum number of node-independent s-t paths (s, t non-adjacent), by unit
/// max-flow on the node-split graph. Stops early once `cap` paths are found.
std::size_t local_vertex_connectivity(const Graph& g, Node s, Node t,
                                      std::size_t cap = SIZE_MAX);

/// Minimum node cut. n-1 for complete graphs, 0 when disconnected.
std::size_t vertex_connectivity(const Graph& g);

struct Cycle {
    std::vector<Node> nodes;  // canonical: starts at its smallest node, second < last
    std::size_t length() const { return nodes.size(); }
    bool operator==(const Cycle&) const = default;
};

bool is_chordless(const Graph& g, const Cycle& c);

struct CycleSearchLimits {
    std::size_t max_nodes = 40;
    std::uint64_t max_expansions = 200'000'000;
};

/// Longest induced cycle with length >= min_len, ties broken by the
/// lexicographically smallest canonical node sequence. Exhaustive; throws
/// ResourceError when the graph or the search exceeds the limits.
std::optional<Cycle> longest_chordless_cycle(const Graph& g, std::size_t min_len = 3,
                                             CycleSearchLimits limits = {});

/// A shortest cycle (girth), lexicographically smallest canonical sequence.
std::optional<Cycle> smallest_cycle(const Graph& g);

}  // namespace cohesion

#endif
