#include "cohesion/metrics.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "cohesion/error.hpp"

namespace cohesion {

namespace {

// Algorithms below work on the symmetric view; avoid the copy when possible.
class SymmetricView {
public:
    explicit SymmetricView(const Graph& g) : owned_(g.directed() ? g.undirected() : Graph{}),
                                             ref_(g.directed() ? owned_ : g) {}
    const Graph& operator*() const { return ref_; }
    const Graph* operator->() const { return &ref_; }

private:
    Graph owned_;
    const Graph& ref_;
};

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

}  // namespace

double density(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n < 2) throw DomainError("density needs at least 2 nodes");
    SymmetricView s(g);
    return static_cast<double>(s->edge_count()) / (0.5 * static_cast<double>(n) * (n - 1));
}

Components connected_components(const Graph& g) {
    SymmetricView s(g);
    const std::size_t n = s->node_count();
    Components out;
    out.label.assign(n, kUnreached);
    std::vector<Node> stack;
    for (Node root = 0; root < n; ++root) {
        if (out.label[root] != kUnreached) continue;
        out.label[root] = out.count;
        stack.push_back(root);
        while (!stack.empty()) {
            Node u = stack.back();
            stack.pop_back();
            for (const auto& nb : s->neighbors(u)) {
                if (out.label[nb.node] == kUnreached) {
                    out.label[nb.node] = out.count;
                    stack.push_back(nb.node);
                }
            }
        }
        ++out.count;
    }
    return out;
}

bool is_connected(const Graph& g) { return connected_components(g).count <= 1; }

std::vector<std::size_t> bfs_distances(const Graph& g, Node source) {
    std::vector<std::size_t> dist(g.node_count(), kUnreached);
    std::vector<Node> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Node u = queue[head];
        for (const auto& nb : g.neighbors(u)) {
            if (dist[nb.node] == kUnreached) {
                dist[nb.node] = dist[u] + 1;
                queue.push_back(nb.node);
            }
        }
    }
    return dist;
}

DistanceSummary distance_summary(const Graph& g) {
    SymmetricView s(g);
    const std::size_t n = s->node_count();
    DistanceSummary out;
    if (n < 2) return out;
    std::uint64_t total = 0;
    for (Node u = 0; u < n; ++u) {
        auto dist = bfs_distances(*s, u);
        for (Node v = u + 1; v < n; ++v) {
            if (dist[v] == kUnreached) {
                out.finite = false;
                out.mean_distance = std::numeric_limits<double>::infinity();
                out.diameter = kUnreached;
                return out;
            }
            total += dist[v];
            out.diameter = std::max(out.diameter, dist[v]);
        }
    }
    out.mean_distance = static_cast<double>(total) / (0.5 * static_cast<double>(n) * (n - 1));
    return out;
}

namespace {

// Unit-capacity flow network on the node-split graph: node x becomes
// in(x)=2x and out(x)=2x+1 joined by a capacity-1 arc.
class SplitFlow {
public:
    explicit SplitFlow(const Graph& g) : head_(2 * g.node_count()) {
        for (Node x = 0; x < g.node_count(); ++x) add_arc(2 * x, 2 * x + 1, 1);
        for (Node u = 0; u < g.node_count(); ++u)
            for (const auto& nb : g.neighbors(u)) add_arc(2 * u + 1, 2 * nb.node, 1);
    }

    std::size_t max_flow(Node s, Node t, std::size_t cap) {
        const std::size_t src = 2 * s + 1;
        const std::size_t dst = 2 * t;
        std::size_t flow = 0;
        std::vector<std::size_t> via(head_.size());
        while (flow < cap) {
            std::fill(via.begin(), via.end(), kUnreached);
            std::vector<std::size_t> queue{src};
            via[src] = kUnreached - 1;
            for (std::size_t h = 0; h < queue.size() && via[dst] == kUnreached; ++h) {
                std::size_t x = queue[h];
                for (std::size_t a : head_[x]) {
                    const Arc& arc = arcs_[a];
                    if (arc.cap > 0 && via[arc.to] == kUnreached) {
                        via[arc.to] = a;
                        queue.push_back(arc.to);
                    }
                }
            }
            if (via[dst] == kUnreached) break;
            for (std::size_t x = dst; x != src;) {
                std::size_t a = via[x];
                arcs_[a].cap -= 1;
                arcs_[a ^ 1].cap += 1;
                x = arcs_[a ^ 1].to;
            }
            ++flow;
        }
        return flow;
    }

private:
    struct Arc {
        std::size_t to;
        int cap;
    };

    void add_arc(std::size_t from, std::size_t to, int cap) {
        head_[from].push_back(arcs_.size());
        arcs_.push_back(Arc{to, cap});
        head_[to].push_back(arcs_.size());
        arcs_.push_back(Arc{from, 0});
    }

    std::vector<std::vector<std::size_t>> head_;
    std::vector<Arc> arcs_;
};

}  // namespace

std::size_t local_vertex_connectivity(const Graph& g, Node s, Node t, std::size_t cap) {
    SymmetricView sym(g);
    if (s == t || sym->has_edge(s, t)) {
        throw DomainError("local vertex connectivity needs distinct non-adjacent nodes");
    }
    SplitFlow net(*sym);
    return net.max_flow(s, t, cap);
}

std::size_t vertex_connectivity(const Graph& g) {
    SymmetricView s(g);
    const std::size_t n = s->node_count();
    if (n < 2) throw DomainError("vertex connectivity needs at least 2 nodes");
    if (!is_connected(*s)) return 0;
    if (s->edge_count() == n * (n - 1) / 2) return n - 1;

    // Even's scheme: some v_i with i <= k lies outside a minimum cut, so
    // scanning sources 0..k against every later non-neighbour is exhaustive.
    std::size_t k = s->min_degree();
    for (Node i = 0; i <= k && i < n; ++i) {
        for (Node j = i + 1; j < n; ++j) {
            if (s->has_edge(i, j)) continue;
            SplitFlow net(*s);
            k = std::min(k, net.max_flow(i, j, k));
        }
    }
    return k;
}

bool is_chordless(const Graph& g, const Cycle& c) {
    const std::size_t l = c.nodes.size();
    if (l < 3) return false;
    for (std::size_t i = 0; i < l; ++i) {
        if (!g.has_edge(c.nodes[i], c.nodes[(i + 1) % l])) return false;
        for (std::size_t j = i + 2; j < l; ++j) {
            if (i == 0 && j == l - 1) continue;
            if (g.has_edge(c.nodes[i], c.nodes[j])) return false;
        }
    }
    return true;
}

namespace {

using Mask = std::uint64_t;

struct ChordlessSearch {
    const std::vector<Mask>& nbr;
    std::size_t n;
    std::size_t min_len;
    std::uint64_t budget;
    std::uint64_t expansions = 0;
    std::vector<Node> path{};
    std::vector<Node> best{};

    static std::size_t popcount(Mask m) { return static_cast<std::size_t>(__builtin_popcountll(m)); }

    // path = [s, p1, .., pk]; `interior` = path nodes plus neighbours of
    // p1..p(k-1); `eligible` = nodes > s.
    void extend(Mask interior, Mask eligible) {
        if (++expansions > budget) {
            throw ResourceError("chordless-cycle search exceeded its budget of " +
                                std::to_string(budget) + " expansions");
        }
        const Node s = path.front();
        const Node last = path.back();
        const std::size_t k = path.size() - 1;
        const std::size_t best_len = std::max(best.size(), min_len - 1);
        Mask cand = nbr[last] & eligible & ~interior;
        if (path.size() + popcount(cand | (eligible & ~interior)) <= best_len) return;
        for (Mask m = cand; m; m &= m - 1) {
            const Node v = static_cast<Node>(__builtin_ctzll(m));
            if (k >= 1 && (nbr[v] >> s & 1)) {
                if (path[1] < v && path.size() + 1 > best_len) {
                    best = path;
                    best.push_back(v);
                }
                continue;
            }
            const Mask next_interior = interior | (Mask{1} << v) | (k >= 1 ? nbr[last] : Mask{0});
            path.push_back(v);
            extend(next_interior, eligible);
            path.pop_back();
        }
    }
};

}  // namespace

std::optional<Cycle> longest_chordless_cycle(const Graph& g, std::size_t min_len,
                                             CycleSearchLimits limits) {
    if (min_len < 3) throw DomainError("min_len must be at least 3");
    SymmetricView s(g);
    const std::size_t n = s->node_count();
    if (n > limits.max_nodes || n > 64) {
        throw ResourceError("chordless-cycle search is limited to n <= " +
                            std::to_string(std::min<std::size_t>(limits.max_nodes, 64)) +
                            " nodes (got " + std::to_string(n) + ")");
    }
    std::vector<Mask> nbr(n, 0);
    for (Node u = 0; u < n; ++u)
        for (const auto& nb : s->neighbors(u)) nbr[u] |= Mask{1} << nb.node;

    ChordlessSearch search{nbr, n, min_len, limits.max_expansions, 0, {}, {}};
    for (Node start = 0; start + 2 < n; ++start) {
        const Mask eligible = (n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1)) & ~((Mask{2} << start) - 1);
        if (1 + ChordlessSearch::popcount(eligible) <= std::max(search.best.size(), min_len - 1)) break;
        search.path = {start};
        search.extend(Mask{1} << start, eligible);
    }
    if (search.best.empty()) return std::nullopt;
    return Cycle{search.best};
}

std::optional<Cycle> smallest_cycle(const Graph& g) {
    SymmetricView s(g);
    const std::size_t n = s->node_count();

    std::size_t girth = kUnreached;
    for (Node r = 0; r < n; ++r) {
        std::vector<std::size_t> dist(n, kUnreached), parent(n, kUnreached);
        std::vector<Node> queue{r};
        dist[r] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            Node u = queue[h];
            if (2 * dist[u] + 1 >= girth) break;
            for (const auto& nb : s->neighbors(u)) {
                Node w = nb.node;
                if (dist[w] == kUnreached) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (parent[u] != w) {
                    girth = std::min(girth, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (girth == kUnreached) return std::nullopt;

    // Lexicographically first canonical cycle of that length: smallest start,
    // then DFS in ascending neighbour order restricted to nodes > start.
    for (Node start = 0; start < n; ++start) {
        // distances back to `start` inside the subgraph of nodes >= start
        std::vector<std::size_t> back(n, kUnreached);
        std::vector<Node> queue{start};
        back[start] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            Node u = queue[h];
            for (const auto& nb : s->neighbors(u)) {
                if (nb.node > start && back[nb.node] == kUnreached) {
                    back[nb.node] = back[u] + 1;
                    queue.push_back(nb.node);
                }
            }
        }
        std::vector<Node> path{start};
        std::vector<char> on_path(n, 0);
        on_path[start] = 1;
        std::optional<Cycle> found;
        auto dfs = [&](auto&& self, Node u) -> bool {
            if (path.size() == girth) {
                if (s->has_edge(u, start) && path[1] < u) {
                    found = Cycle{path};
                    return true;
                }
                return false;
            }
            for (const auto& nb : s->neighbors(u)) {
                Node v = nb.node;
                if (v <= start || on_path[v]) continue;
                if (back[v] == kUnreached || path.size() + back[v] > girth) continue;
                path.push_back(v);
                on_path[v] = 1;
                if (self(self, v)) return true;
                on_path[v] = 0;
                path.pop_back();
            }
            return false;
        };
        if (dfs(dfs, start)) return found;
    }
    return std::nullopt;
}

}  // namespace cohesion
