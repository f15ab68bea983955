#ifndef COHESION_GRAPH_HPP
#define COHESION_GRAPH_HPP

#include <compare>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cohesion {

using Node = std::size_t;

struct Neighbor {
    Node node;
    double weight;
    bool operator==(const Neighbor&) const = default;
};

struct Edge {
    Node u;
    Node v;
    double weight = 1.0;
    auto operator<=>(const Edge&) const = default;
};

/// How one-directional ties are treated when a directed graph is read as an
/// undirected one: `mutual` keeps only reciprocated ties (weight = min of the
/// two directions), `any` keeps every tie (weight = max).
enum class TiePolicy { mutual, any };

const char* to_string(TiePolicy policy);

/// Simple graph on nodes 0..n-1 with non-negative tie weights a_ij.
///
/// Undirected graphs store every tie in both adjacency rows. Directed graphs
/// store out-ties only and carry the TiePolicy used by every algorithm that
/// needs the symmetric view.
class Graph {
public:
    explicit Graph(std::size_t n = 0, bool directed = false, TiePolicy policy = TiePolicy::mutual);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    bool directed() const noexcept { return directed_; }
    TiePolicy tie_policy() const noexcept { return policy_; }

    /// Adds the tie u-v (u->v when directed). Re-adding an existing tie with the
    /// same weight is a no-op; a conflicting weight, a self-loop, a non-positive
    /// weight or an out-of-range node is a ValidationError.
    void add_edge(Node u, Node v, double weight = 1.0);
    bool remove_edge(Node u, Node v);
    bool has_edge(Node u, Node v) const;
    double weight(Node u, Node v) const;

    std::span<const Neighbor> neighbors(Node u) const { return adjacency_.at(u); }
    std::size_t degree(Node u) const { return adjacency_.at(u).size(); }
    double strength(Node u) const;
    std::size_t min_degree() const;

    std::size_t edge_count() const noexcept { return edge_count_; }
    bool weighted() const;

    /// Sorted edge list; undirected edges are reported once with u < v.
    std::vector<Edge> edges() const;

    /// Symmetric view. Returns a copy of *this when already undirected.
    Graph undirected() const;

    bool operator==(const Graph& other) const;

private:
    void insert_half(Node u, Node v, double weight);
    bool erase_half(Node u, Node v);
    void check_node(Node u) const;

    std::vector<std::vector<Neighbor>> adjacency_;
    std::size_t edge_count_ = 0;
    bool directed_ = false;
    TiePolicy policy_ = TiePolicy::mutual;
};

Graph from_edges(std::size_t n, std::span<const Edge> edges);

/// Graph read from the edge-list text format together with the label of each
/// dense node index.
struct LabeledGraph {
    Graph graph;
    std::vector<std::string> labels;
};

/// Parses `u v [w]` lines. `#` starts a comment; a `#% labels ...` line
/// pre-declares labels in index order (written by to_edge_list so isolated
/// nodes and the index order survive a round trip).
LabeledGraph parse_edge_list(std::string_view text, bool directed = false,
                             TiePolicy policy = TiePolicy::mutual);

/// Byte-stable serialization: label header, then edges sorted by index pair.
/// Unit weights are omitted. Default labels are the decimal indices.
std::string to_edge_list(const Graph& g, std::span<const std::string> labels = {});

LabeledGraph read_edge_list_file(const std::filesystem::path& path, bool directed = false,
                                 TiePolicy policy = TiePolicy::mutual);
void write_edge_list_file(const std::filesystem::path& path, const Graph& g,
                          std::span<const std::string> labels = {});

}  // namespace cohesion

#endif
