#include "cohesion/graph.hpp"

#include <algorithm>
#include <cmath>

#include "cohesion/error.hpp"

namespace cohesion {

const char* to_string(TiePolicy policy) {
    return policy == TiePolicy::mutual ? "mutual" : "any";
}

Graph::Graph(std::size_t n, bool directed, TiePolicy policy)
    : adjacency_(n), directed_(directed), policy_(policy) {}

void Graph::check_node(Node u) const {
    if (u >= adjacency_.size()) {
        throw ValidationError("node " + std::to_string(u) + " out of range for n=" +
                              std::to_string(adjacency_.size()));
    }
}

void Graph::insert_half(Node u, Node v, double weight) {
    auto& row = adjacency_[u];
    auto it = std::lower_bound(row.begin(), row.end(), v,
                               [](const Neighbor& a, Node b) { return a.node < b; });
    row.insert(it, Neighbor{v, weight});
}

bool Graph::erase_half(Node u, Node v) {
    auto& row = adjacency_[u];
    auto it = std::lower_bound(row.begin(), row.end(), v,
                               [](const Neighbor& a, Node b) { return a.node < b; });
    if (it == row.end() || it->node != v) return false;
    row.erase(it);
    return true;
}

void Graph::add_edge(Node u, Node v, double weight) {
    check_node(u);
    check_node(v);
    if (u == v) throw ValidationError("self-loop on node " + std::to_string(u));
    if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw ValidationError("tie " + std::to_string(u) + "-" + std::to_string(v) +
                              " has non-positive or non-finite weight");
    }
    if (has_edge(u, v)) {
        if (this->weight(u, v) != weight) {
            throw ValidationError("conflicting weights for tie " + std::to_string(u) + "-" +
                                  std::to_string(v));
        }
        return;
    }
    insert_half(u, v, weight);
    if (!directed_) insert_half(v, u, weight);
    ++edge_count_;
}

bool Graph::remove_edge(Node u, Node v) {
    check_node(u);
    check_node(v);
    if (!erase_half(u, v)) return false;
    if (!directed_) erase_half(v, u);
    --edge_count_;
    return true;
}

bool Graph::has_edge(Node u, Node v) const {
    if (u >= adjacency_.size() || v >= adjacency_.size()) return false;
    const auto& row = adjacency_[u];
    auto it = std::lower_bound(row.begin(), row.end(), v,
                               [](const Neighbor& a, Node b) { return a.node < b; });
    return it != row.end() && it->node == v;
}

double Graph::weight(Node u, Node v) const {
    if (u >= adjacency_.size()) return 0.0;
    const auto& row = adjacency_[u];
    auto it = std::lower_bound(row.begin(), row.end(), v,
                               [](const Neighbor& a, Node b) { return a.node < b; });
    return (it != row.end() && it->node == v) ? it->weight : 0.0;
}

double Graph::strength(Node u) const {
    double s = 0.0;
    for (const auto& nb : neighbors(u)) s += nb.weight;
    return s;
}

std::size_t Graph::min_degree() const {
    std::size_t best = adjacency_.empty() ? 0 : adjacency_[0].size();
    for (const auto& row : adjacency_) best = std::min(best, row.size());
    return best;
}

bool Graph::weighted() const {
    for (const auto& row : adjacency_)
        for (const auto& nb : row)
            if (nb.weight != 1.0) return true;
    return false;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Node u = 0; u < adjacency_.size(); ++u)
        for (const auto& nb : adjacency_[u])
            if (directed_ || u < nb.node) out.push_back(Edge{u, nb.node, nb.weight});
    return out;
}

Graph Graph::undirected() const {
    if (!directed_) return *this;
    Graph out(node_count(), false, policy_);
    for (Node u = 0; u < adjacency_.size(); ++u) {
        for (const auto& nb : adjacency_[u]) {
            const double back = weight(nb.node, u);
            if (policy_ == TiePolicy::mutual) {
                if (back > 0.0 && u < nb.node) out.add_edge(u, nb.node, std::min(nb.weight, back));
            } else if (back == 0.0 || u < nb.node) {
                out.add_edge(u, nb.node, std::max(nb.weight, back));
            }
        }
    }
    return out;
}

bool Graph::operator==(const Graph& other) const {
    return directed_ == other.directed_ && adjacency_ == other.adjacency_;
}

Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (const auto& e : edges) g.add_edge(e.u, e.v, e.weight);
    return g;
}

}  // namespace cohesion
