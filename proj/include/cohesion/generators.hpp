#ifndef COHESION_GENERATORS_HPP
#define COHESION_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cohesion/graph.hpp"
#include "cohesion/metrics.hpp"

namespace cohesion {

Graph clique(std::size_t n);
Graph cycle(std::size_t n);
Graph path(std::size_t n);
/// n nodes in total: hub 0 and n-1 leaves.
Graph star(std::size_t n);
/// Each node tied to its k/2 nearest neighbours on either side; k even.
Graph ring_lattice(std::size_t n, std::size_t k);
/// side x side grid, node (r, c) = r * side + c.
Graph square_lattice(std::size_t side);

enum class KearnsLayout {
    chain_shared,   // cliques in a line, one hub per clique carries both bridges
    ring_distinct,  // cliques in a ring, distinct in/out bridge endpoints
};

/// Six 6-cliques (nodes 6c..6c+5) joined by single bridging ties.
Graph kearns_base(KearnsLayout layout = KearnsLayout::chain_shared);
std::vector<std::vector<Node>> kearns_groups();

enum class RewireConstraint { keep_connected, keep_clusters_linked };

enum class RewireMode {
    endpoint,  // every endpoint of every tie is moved independently with probability p
    edge,      // every tie is selected with probability p and re-placed on a random free pair
};

struct RewireConfig {
    double p = 0.0;
    RewireConstraint constraint = RewireConstraint::keep_clusters_linked;
    std::size_t max_retries = 1000;
    RewireMode mode = RewireMode::endpoint;
    /// Groups that must end up in a single component under
    /// keep_clusters_linked; empty means all nodes.
    std::vector<std::vector<Node>> groups;
};

/// Edge count is preserved exactly. Draws violating the constraint are
/// discarded and redrawn up to max_retries times (ResourceError after).
Graph rewire(const Graph& g, const RewireConfig& cfg, std::uint64_t seed);

const char* to_string(RewireMode mode);
RewireMode parse_rewire_mode(std::string_view name);

/// Uniform random graph with exactly m ties, redrawn until connected.
Graph random_gnm(std::size_t n, std::size_t m, std::uint64_t seed);

/// m = round(density * n(n-1)/2) for both families.
std::size_t edges_for_density(std::size_t n, double density);
Graph random_poisson(std::size_t n, double density, std::uint64_t seed);

/// Expected-degree weights w_i = (i+1)^(-1/(gamma-1)); m distinct ties drawn
/// without replacement with probability proportional to w_i w_j.
Graph random_skewed(std::size_t n, double density, std::uint64_t seed, double gamma = 2.5);

/// Two halves of n/2 nodes joined by the single tie (0, n/2); the other m-1
/// ties fall uniformly inside the halves.
Graph random_clustered(std::size_t n, std::size_t m, std::uint64_t seed);

/// Two K_{n_each} joined by bridges (i, n_each + i), i < k. For bridge b one
/// tie is removed from clique b % 2, never touching a bridge endpoint and
/// preferring the pair of highest current degree, so the edge count stays
/// that of two separate cliques.
Graph two_cliques_bridged(std::size_t n_each, std::size_t k);

/// C_l plus the chord (0, l/2).
Graph chord_midway(std::size_t l);

struct ChordMove {
    Graph graph;
    Edge removed;
    Edge added;
    Cycle cycle;  // the chordless cycle that received the tie
};

/// Removes one tie of a smallest cycle and re-inserts it midway across the
/// longest chordless cycle (l >= 6) of what remains. Among removable ties
/// (the graph must stay connected) and midway positions it takes the one
/// minimizing mean distance, then maximizing binary lambda2, then the first.
ChordMove relocate_chord(const Graph& g);

/// Same removed tie and cycle as relocate_chord, but the tie goes to the
/// non-adjacent cycle pair that maximizes mean distance (then minimizes
/// lambda2).
ChordMove misplace_chord(const Graph& g);

/// A cycle of random length in [7, 13] with a triangle hanging on one of its
/// edges and a two-node pendant path on a random cycle node.
Graph triad_on_cycle(std::uint64_t seed);

/// Text form used by the CLI and the C API, e.g. `clique:24`,
/// `ring_lattice:24,4`, `square_lattice:5`, `kearns`, `kearns:ring`,
/// `kearns_rewired:0.1`, `gnm:24,48`, `poisson:30,0.3`, `skewed:30,0.3`,
/// `clustered:12,24`, `two_cliques:30,5`, `chord_midway:10`, `triad_on_cycle`.
Graph generate(std::string_view spec, std::uint64_t seed = 0);

}  // namespace cohesion

#endif
