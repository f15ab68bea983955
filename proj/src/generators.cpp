#include "cohesion/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <tuple>

#include "cohesion/error.hpp"
#include "cohesion/random.hpp"
#include "cohesion/spectra.hpp"

namespace cohesion {

namespace {

constexpr std::size_t kMaxConnectAttempts = 1000;

std::pair<Node, Node> decode_pair(std::size_t index, std::size_t n) {
    // pairs (u, v), u < v, in row-major order
    Node u = 0;
    std::size_t row = n - 1;
    while (index >= row) {
        index -= row;
        ++u;
        --row;
    }
    return {u, u + 1 + index};
}

bool groups_linked(const Graph& g, const std::vector<std::vector<Node>>& groups) {
    if (groups.empty()) return is_connected(g);
    const auto comps = connected_components(g);
    std::size_t label = SIZE_MAX;
    for (const auto& grp : groups)
        for (Node u : grp) {
            if (label == SIZE_MAX) label = comps.label[u];
            else if (comps.label[u] != label) return false;
        }
    return true;
}

Graph rewire_endpoints(const Graph& g, double p, Rng& rng) {
    const std::size_t n = g.node_count();
    Graph h = g;
    for (const auto& e : g.edges()) {
        const bool move_u = rng.bernoulli(p);
        const bool move_v = rng.bernoulli(p);
        if (!move_u && !move_v) continue;
        h.remove_edge(e.u, e.v);
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt > 100000) throw ResourceError("rewire could not place a tie");
            const Node a = move_u ? rng.below(n) : e.u;
            const Node b = move_v ? rng.below(n) : e.v;
            if (a != b && !h.has_edge(a, b)) {
                h.add_edge(a, b, e.weight);
                break;
            }
        }
    }
    return h;
}

Graph rewire_edges(const Graph& g, double p, Rng& rng) {
    const std::size_t n = g.node_count();
    Graph h = g;
    std::vector<Edge> selected;
    for (const auto& e : g.edges())
        if (rng.bernoulli(p)) selected.push_back(e);
    for (const auto& e : selected) h.remove_edge(e.u, e.v);
    for (const auto& e : selected) {
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt > 100000) throw ResourceError("rewire could not place a tie");
            const Node a = rng.below(n);
            const Node b = rng.below(n);
            if (a != b && !h.has_edge(a, b)) {
                h.add_edge(a, b, e.weight);
                break;
            }
        }
    }
    return h;
}

std::vector<std::size_t> sample_indices(std::size_t total, std::size_t m, Rng& rng) {
    std::vector<std::size_t> idx(total);
    for (std::size_t i = 0; i < total; ++i) idx[i] = i;
    for (std::size_t i = 0; i < m; ++i) std::swap(idx[i], idx[i + rng.below(total - i)]);
    idx.resize(m);
    return idx;
}

template <class Draw>
Graph draw_connected(Draw draw, const char* family) {
    for (std::size_t attempt = 0; attempt < kMaxConnectAttempts; ++attempt) {
        Graph g = draw();
        if (is_connected(g)) return g;
    }
    throw ResourceError(std::string(family) + ": " + std::to_string(kMaxConnectAttempts) +
                        " consecutive samples were disconnected");
}

double mean_distance(const Graph& g) { return distance_summary(g).mean_distance; }

// The removal and target cycle shared by relocate_chord and misplace_chord.
struct ChordPlan {
    Graph reduced;
    Edge removed;
    Cycle cycle;
    Edge added;
};

ChordPlan plan_relocation(const Graph& g) {
    const Graph sym = g.undirected();
    const auto tri = smallest_cycle(sym);
    if (!tri) throw DomainError("relocate_chord needs a graph with a cycle");

    bool found = false;
    ChordPlan best;
    std::tuple<double, double> best_key;
    const auto& c = tri->nodes;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Edge removed{std::min(c[i], c[(i + 1) % c.size()]), std::max(c[i], c[(i + 1) % c.size()])};
        Graph reduced = sym;
        reduced.remove_edge(removed.u, removed.v);
        if (!is_connected(reduced)) continue;
        const auto ring = longest_chordless_cycle(reduced, 6);
        if (!ring) continue;
        const std::size_t l = ring->length();
        for (std::size_t j = 0; j < l; ++j) {
            const Node a = ring->nodes[j], b = ring->nodes[(j + l / 2) % l];
            const Edge chord{std::min(a, b), std::max(a, b)};
            if (chord.u == removed.u && chord.v == removed.v) continue;
            Graph candidate = reduced;
            candidate.add_edge(chord.u, chord.v);
            const std::tuple<double, double> key{mean_distance(candidate),
                                                 -algebraic_connectivity(candidate)};
            if (!found || key < best_key) {
                found = true;
                best_key = key;
                best = ChordPlan{reduced, removed, *ring, chord};
            }
        }
    }
    if (!found) {
        throw DomainError("no removable tie of a smallest cycle leaves a chordless cycle of length >= 6");
    }
    return best;
}

std::size_t parse_size(std::string_view s, std::string_view spec) {
    std::size_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw DomainError("bad integer `" + std::string(s) + "` in generator spec `" + std::string(spec) + "`");
    }
    return v;
}

double parse_real(std::string_view s, std::string_view spec) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw DomainError("bad number `" + std::string(s) + "` in generator spec `" + std::string(spec) + "`");
    }
    return v;
}

}  // namespace

Graph clique(std::size_t n) {
    if (n < 1) throw DomainError("clique needs n >= 1");
    Graph g(n);
    for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph cycle(std::size_t n) {
    if (n < 3) throw DomainError("cycle needs n >= 3");
    Graph g(n);
    for (Node u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
    return g;
}

Graph path(std::size_t n) {
    if (n < 1) throw DomainError("path needs n >= 1");
    Graph g(n);
    for (Node u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
}

Graph star(std::size_t n) {
    if (n < 2) throw DomainError("star needs n >= 2");
    Graph g(n);
    for (Node u = 1; u < n; ++u) g.add_edge(0, u);
    return g;
}

Graph ring_lattice(std::size_t n, std::size_t k) {
    if (k % 2 != 0 || k == 0) throw DomainError("ring_lattice needs an even k >= 2");
    if (k >= n) throw DomainError("ring_lattice needs k < n");
    Graph g(n);
    for (Node u = 0; u < n; ++u)
        for (std::size_t step = 1; step <= k / 2; ++step) g.add_edge(u, (u + step) % n);
    return g;
}

Graph square_lattice(std::size_t side) {
    if (side < 1) throw DomainError("square_lattice needs side >= 1");
    Graph g(side * side);
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c) {
            const Node u = r * side + c;
            if (c + 1 < side) g.add_edge(u, u + 1);
            if (r + 1 < side) g.add_edge(u, u + side);
        }
    return g;
}

Graph kearns_base(KearnsLayout layout) {
    Graph g(36);
    for (std::size_t c = 0; c < 6; ++c)
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i + 1; j < 6; ++j) g.add_edge(6 * c + i, 6 * c + j);
    if (layout == KearnsLayout::chain_shared) {
        for (std::size_t c = 0; c < 5; ++c) g.add_edge(6 * c, 6 * c + 6);
    } else {
        for (std::size_t c = 0; c < 6; ++c) g.add_edge(6 * c + 1, 6 * ((c + 1) % 6));
    }
    return g;
}

std::vector<std::vector<Node>> kearns_groups() {
    std::vector<std::vector<Node>> groups(6);
    for (std::size_t c = 0; c < 6; ++c)
        for (std::size_t i = 0; i < 6; ++i) groups[c].push_back(6 * c + i);
    return groups;
}

const char* to_string(RewireMode mode) { return mode == RewireMode::endpoint ? "endpoint" : "edge"; }

RewireMode parse_rewire_mode(std::string_view name) {
    if (name == "endpoint") return RewireMode::endpoint;
    if (name == "edge") return RewireMode::edge;
    throw DomainError("unknown rewire mode `" + std::string(name) + "`");
}

Graph rewire(const Graph& g, const RewireConfig& cfg, std::uint64_t seed) {
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw DomainError("rewiring probability must lie in [0, 1]");
    if (g.directed()) throw DomainError("rewire expects an undirected graph");
    for (const auto& grp : cfg.groups)
        for (Node u : grp)
            if (u >= g.node_count()) throw ValidationError("rewire group node out of range");
    if (cfg.p == 0.0) return g;

    Rng rng(seed);
    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(cfg.max_retries, 1); ++attempt) {
        Graph h = cfg.mode == RewireMode::endpoint ? rewire_endpoints(g, cfg.p, rng)
                                                   : rewire_edges(g, cfg.p, rng);
        const bool ok = cfg.constraint == RewireConstraint::keep_connected ? is_connected(h)
                                                                           : groups_linked(h, cfg.groups);
        if (ok) return h;
    }
    throw ResourceError("rewire: no draw satisfied the constraint within " +
                        std::to_string(cfg.max_retries) + " retries");
}

Graph random_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
    const std::size_t total = n * (n - 1) / 2;
    if (n < 2 || m > total) throw DomainError("gnm needs n >= 2 and m <= n(n-1)/2");
    if (m + 1 < n) throw DomainError("gnm: m < n-1 ties cannot connect n nodes");
    Rng rng(seed);
    return draw_connected(
        [&] {
            Graph g(n);
            for (std::size_t i : sample_indices(total, m, rng)) {
                auto [u, v] = decode_pair(i, n);
                g.add_edge(u, v);
            }
            return g;
        },
        "gnm");
}

std::size_t edges_for_density(std::size_t n, double density) {
    if (!(density > 0.0 && density <= 1.0)) throw DomainError("density must lie in (0, 1]");
    return static_cast<std::size_t>(std::llround(density * static_cast<double>(n * (n - 1)) / 2.0));
}

Graph random_poisson(std::size_t n, double density, std::uint64_t seed) {
    return random_gnm(n, edges_for_density(n, density), seed);
}

Graph random_skewed(std::size_t n, double density, std::uint64_t seed, double gamma) {
    if (!(gamma > 1.0)) throw DomainError("skewed exponent must exceed 1");
    const std::size_t m = edges_for_density(n, density);
    const std::size_t total = n * (n - 1) / 2;
    if (n < 2 || m + 1 < n) throw DomainError("skewed: too few ties to connect the graph");
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(static_cast<double>(i + 1), -1.0 / (gamma - 1.0));

    Rng rng(seed);
    return draw_connected(
        [&] {
            // weighted sampling without replacement: keep the m largest log(u)/w
            std::vector<std::pair<double, std::size_t>> keys(total);
            for (std::size_t i = 0; i < total; ++i) {
                auto [u, v] = decode_pair(i, n);
                keys[i] = {std::log(rng.open_uniform()) / (w[u] * w[v]), i};
            }
            std::partial_sort(keys.begin(), keys.begin() + static_cast<long>(m), keys.end(),
                              [](const auto& a, const auto& b) {
                                  return a.first > b.first || (a.first == b.first && a.second < b.second);
                              });
            Graph g(n);
            for (std::size_t k = 0; k < m; ++k) {
                auto [u, v] = decode_pair(keys[k].second, n);
                g.add_edge(u, v);
            }
            return g;
        },
        "skewed");
}

Graph random_clustered(std::size_t n, std::size_t m, std::uint64_t seed) {
    const std::size_t h = n / 2;
    if (n < 4) throw DomainError("clustered needs n >= 4");
    std::vector<Edge> intra;
    for (std::size_t base : {std::size_t{0}, h}) {
        const std::size_t end = base == 0 ? h : n;
        for (Node u = base; u < end; ++u)
            for (Node v = u + 1; v < end; ++v) intra.push_back({u, v});
    }
    if (m < 1 || m - 1 > intra.size()) throw DomainError("clustered: m does not fit inside the halves");
    Rng rng(seed);
    return draw_connected(
        [&] {
            Graph g(n);
            g.add_edge(0, h);
            for (std::size_t i : sample_indices(intra.size(), m - 1, rng)) g.add_edge(intra[i].u, intra[i].v);
            return g;
        },
        "clustered");
}

Graph two_cliques_bridged(std::size_t n_each, std::size_t k) {
    if (n_each < 2) throw DomainError("two_cliques_bridged needs n_each >= 2");
    if (k > n_each) throw DomainError("k bridges need k <= n_each");
    const std::size_t free_nodes = n_each - k;
    const std::size_t free_pairs = free_nodes * (free_nodes - (free_nodes > 0 ? 1 : 0)) / 2;
    if ((k + 1) / 2 > free_pairs) {
        throw DomainError("k=" + std::to_string(k) + " bridges leave too few ties to remove in K_" +
                          std::to_string(n_each));
    }

    const std::size_t n = 2 * n_each;
    Graph g(n);
    for (std::size_t base : {std::size_t{0}, n_each})
        for (Node u = 0; u < n_each; ++u)
            for (Node v = u + 1; v < n_each; ++v) g.add_edge(base + u, base + v);

    auto is_endpoint = [&](Node u) { return (u % n_each) < k; };
    for (std::size_t b = 0; b < k; ++b) {
        g.add_edge(b, n_each + b);
        const std::size_t base = (b % 2) * n_each;
        bool have = false;
        Edge pick{};
        std::size_t pick_deg = 0;
        for (Node u = base; u < base + n_each; ++u) {
            if (is_endpoint(u)) continue;
            for (Node v = u + 1; v < base + n_each; ++v) {
                if (is_endpoint(v) || !g.has_edge(u, v)) continue;
                const std::size_t deg = g.degree(u) + g.degree(v);
                if (!have || deg > pick_deg) {
                    have = true;
                    pick = {u, v};
                    pick_deg = deg;
                }
            }
        }
        g.remove_edge(pick.u, pick.v);
    }
    return g;
}

Graph chord_midway(std::size_t l) {
    if (l < 6) throw DomainError("chord_midway needs l >= 6");
    Graph g = cycle(l);
    g.add_edge(0, l / 2);
    return g;
}

ChordMove relocate_chord(const Graph& g) {
    ChordPlan plan = plan_relocation(g);
    plan.reduced.add_edge(plan.added.u, plan.added.v);
    return ChordMove{std::move(plan.reduced), plan.removed, plan.added, std::move(plan.cycle)};
}

ChordMove misplace_chord(const Graph& g) {
    ChordPlan plan = plan_relocation(g);
    const auto& c = plan.cycle.nodes;
    bool found = false;
    Edge pick{};
    std::tuple<double, double> best_key;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const Edge e{std::min(c[i], c[j]), std::max(c[i], c[j])};
            if (plan.reduced.has_edge(e.u, e.v)) continue;
            if (e.u == plan.removed.u && e.v == plan.removed.v) continue;
            Graph candidate = plan.reduced;
            candidate.add_edge(e.u, e.v);
            const std::tuple<double, double> key{-mean_distance(candidate), algebraic_connectivity(candidate)};
            if (!found || key < best_key) {
                found = true;
                best_key = key;
                pick = e;
            }
        }
    if (!found) throw DomainError("cycle has no free pair for the misplaced tie");
    plan.reduced.add_edge(pick.u, pick.v);
    return ChordMove{std::move(plan.reduced), plan.removed, pick, std::move(plan.cycle)};
}

Graph triad_on_cycle(std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t l = 7 + rng.below(7);
    Graph g(l + 3);
    for (Node u = 0; u < l; ++u) g.add_edge(u, (u + 1) % l);
    const Node e = rng.below(l);
    g.add_edge(l, e);
    g.add_edge(l, (e + 1) % l);
    const Node a = rng.below(l);
    g.add_edge(a, l + 1);
    g.add_edge(l + 1, l + 2);
    return g;
}

Graph generate(std::string_view spec, std::uint64_t seed) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    std::vector<std::string_view> args;
    if (colon != std::string_view::npos) {
        std::string_view rest = spec.substr(colon + 1);
        for (;;) {
            const auto comma = rest.find(',');
            args.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
    }
    auto need = [&](std::size_t count) {
        if (args.size() != count) {
            throw DomainError("generator `" + std::string(name) + "` takes " + std::to_string(count) +
                              " argument(s)");
        }
    };
    auto size_arg = [&](std::size_t i) { return parse_size(args[i], spec); };
    auto real_arg = [&](std::size_t i) { return parse_real(args[i], spec); };

    if (name == "clique") return need(1), clique(size_arg(0));
    if (name == "cycle") return need(1), cycle(size_arg(0));
    if (name == "path") return need(1), path(size_arg(0));
    if (name == "star") return need(1), star(size_arg(0));
    if (name == "ring_lattice") return need(2), ring_lattice(size_arg(0), size_arg(1));
    if (name == "square_lattice") return need(1), square_lattice(size_arg(0));
    if (name == "kearns") {
        if (args.empty()) return kearns_base();
        need(1);
        if (args[0] == "chain") return kearns_base(KearnsLayout::chain_shared);
        if (args[0] == "ring") return kearns_base(KearnsLayout::ring_distinct);
        throw DomainError("kearns layout must be `chain` or `ring`");
    }
    if (name == "kearns_rewired") {
        need(1);
        RewireConfig cfg;
        cfg.p = real_arg(0);
        cfg.groups = kearns_groups();
        return rewire(kearns_base(), cfg, seed);
    }
    if (name == "gnm") return need(2), random_gnm(size_arg(0), size_arg(1), seed);
    if (name == "poisson") return need(2), random_poisson(size_arg(0), real_arg(1), seed);
    if (name == "skewed") return need(2), random_skewed(size_arg(0), real_arg(1), seed);
    if (name == "clustered") return need(2), random_clustered(size_arg(0), size_arg(1), seed);
    if (name == "two_cliques") return need(2), two_cliques_bridged(size_arg(0), size_arg(1));
    if (name == "chord_midway") return need(1), chord_midway(size_arg(0));
    if (name == "triad_on_cycle") return need(0), triad_on_cycle(seed);
    throw DomainError("unknown generator `" + std::string(name) + "`");
}

}  // namespace cohesion
