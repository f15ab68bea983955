#include "cohesion/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "cohesion/error.hpp"
#include "cohesion/metrics.hpp"
#include "cohesion/parallel.hpp"
#include "cohesion/random.hpp"

namespace cohesion {

namespace {

std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// Eigenbasis of the symmetric operator behind `kind`. For row_normalized,
// exp(-Lrn t) = D^-1/2 exp(-L_nor t) D^1/2, so states are carried as
// z = D^1/2 y and `scale` holds sqrt(d).
struct Modal {
    std::vector<double> values;
    Matrix u;
    std::vector<double> scale;

    std::vector<double> coefficients(std::span<const double> y) const {
        const std::size_t n = scale.size();
        std::vector<double> b(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) b[k] += u(i, k) * scale[i] * y[i];
        return b;
    }

    std::vector<double> evaluate(std::span<const double> b, double t) const {
        const std::size_t n = scale.size();
        std::vector<double> decay(n);
        for (std::size_t k = 0; k < n; ++k) decay[k] = b[k] * std::exp(-std::max(values[k], 0.0) * t);
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double z = 0.0;
            for (std::size_t k = 0; k < n; ++k) z += u(i, k) * decay[k];
            y[i] = z / scale[i];
        }
        return y;
    }
};

Modal modal(const Graph& sym, LaplacianKind kind) {
    const LaplacianKind solve =
        kind == LaplacianKind::row_normalized ? LaplacianKind::sym_normalized : kind;
    auto eig = eigen_symmetric(laplacian(sym, solve));
    Modal m{std::move(eig.values), std::move(eig.vectors), std::vector<double>(sym.node_count(), 1.0)};
    if (kind == LaplacianKind::row_normalized)
        for (Node i = 0; i < sym.node_count(); ++i) m.scale[i] = std::sqrt(sym.strength(i));
    return m;
}

void require_size(std::span<const double> y, std::size_t n, const char* what) {
    if (y.size() != n) {
        throw ValidationError(std::string(what) + " has length " + std::to_string(y.size()) +
                              ", graph has " + std::to_string(n) + " nodes");
    }
    for (double x : y)
        if (!std::isfinite(x)) throw ValidationError(std::string(what) + " has a non-finite entry");
}

// In-place component averaging / relaxation for one round.
void apply_round(const Round& round, std::size_t n, std::vector<double>& y, const RoundRule& rule) {
    if (!round.subgraph) {
        const double keep = rule.kind == RoundRule::Kind::exponential ? std::exp(-2.0 * rule.t_round) : 0.0;
        for (auto [a, b] : round.pairs) {
            const double mean = 0.5 * (y[a] + y[b]);
            const double half = 0.5 * (y[a] - y[b]) * keep;
            y[a] = mean + half;
            y[b] = mean - half;
        }
        return;
    }
    Graph g(n);
    for (auto [a, b] : round.pairs) g.add_edge(a, b);
    if (rule.kind == RoundRule::Kind::pair_average) {
        const auto comps = connected_components(g);
        std::vector<double> sum(comps.count, 0.0);
        std::vector<std::size_t> size(comps.count, 0);
        for (Node i = 0; i < n; ++i) sum[comps.label[i]] += y[i], ++size[comps.label[i]];
        for (Node i = 0; i < n; ++i) y[i] = sum[comps.label[i]] / static_cast<double>(size[comps.label[i]]);
        return;
    }
    const Modal m = modal(g, LaplacianKind::binary);
    y = m.evaluate(m.coefficients(y), rule.t_round);
}

}  // namespace

double spread(std::span<const double> y) {
    if (y.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    return *hi - *lo;
}

std::vector<double> Trajectory::spreads() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& y : samples) out.push_back(spread(y));
    return out;
}

Trajectory diffuse_spectral(const Graph& g, LaplacianKind kind, std::span<const double> y0,
                            std::span<const double> times) {
    const Graph sym = g.undirected();
    const std::size_t n = sym.node_count();
    require_size(y0, n, "y0");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0)) throw DomainError("sample times must be >= 0");
        if (i > 0 && times[i] < times[i - 1]) throw DomainError("sample times must be non-decreasing");
    }

    const Modal m = modal(sym, kind);
    Trajectory tr;
    tr.method = "spectral";
    tr.coefficients = m.coefficients(y0);
    tr.disconnected = n > 0 && !is_connected(sym);
    for (double t : times) {
        tr.times.push_back(t);
        if (t == 0.0) tr.samples.emplace_back(y0.begin(), y0.end());
        else tr.samples.push_back(m.evaluate(tr.coefficients, t));
    }
    return tr;
}

double stability_bound(const Graph& g, LaplacianKind kind, std::span<const double> s) {
    const Graph sym = g.undirected();
    require_size(s, sym.node_count(), "susceptibility");
    double s_max = 0.0;
    for (double x : s) {
        if (!(x > 0.0)) throw ValidationError("susceptibilities must be positive");
        s_max = std::max(s_max, x);
    }
    const LaplacianKind solve =
        kind == LaplacianKind::row_normalized ? LaplacianKind::sym_normalized : kind;
    const auto values = eigen_symmetric(laplacian(sym, solve), false).values;
    const double lambda_max = values.empty() ? 0.0 : values.back();
    if (lambda_max <= 0.0 || s_max == 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 / (s_max * lambda_max);
}

Trajectory diffuse_stepped(const Graph& g, LaplacianKind kind, std::span<const double> s,
                           std::span<const double> y0, double t_end, double dt) {
    const Graph sym = g.undirected();
    const std::size_t n = sym.node_count();
    require_size(y0, n, "y0");
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    if (!(t_end >= 0.0)) throw DomainError("t_end must be >= 0");
    const double bound = stability_bound(sym, kind, s);
    if (dt >= bound) {
        throw DomainError("dt=" + fmt(dt) + " violates the stability bound dt < " + fmt(bound));
    }

    const Matrix L = laplacian(sym, kind);
    auto rhs = [&](const std::vector<double>& y) {
        auto out = L.apply(y);
        for (std::size_t i = 0; i < n; ++i) out[i] *= -s[i];
        return out;
    };

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
    const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

    Trajectory tr;
    tr.method = "stepped";
    tr.disconnected = n > 0 && !is_connected(sym);
    std::vector<double> y(y0.begin(), y0.end());
    tr.times.push_back(0.0);
    tr.samples.push_back(y);
    std::vector<double> tmp(n);
    for (std::size_t step = 1; step <= steps; ++step) {
        const auto k1 = rhs(y);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        const auto k2 = rhs(tmp);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        const auto k3 = rhs(tmp);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        const auto k4 = rhs(tmp);
        for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        tr.times.push_back(step == steps ? t_end : h * static_cast<double>(step));
        tr.samples.push_back(y);
    }
    return tr;
}

double convergence_time(const Graph& g, LaplacianKind kind, std::span<const double> y0,
                        double epsilon) {
    if (kind == LaplacianKind::sym_normalized) {
        throw DomainError("convergence time is defined for consensus dynamics (binary, rownorm)");
    }
    const Graph sym = g.undirected();
    require_size(y0, sym.node_count(), "y0");
    if (!is_connected(sym)) throw DomainError("a disconnected graph does not reach consensus");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (epsilon >= spread(y0)) {
        throw DomainError("epsilon=" + fmt(epsilon) + " is not below the initial spread " +
                          fmt(spread(y0)));
    }

    const Modal m = modal(sym, kind);
    const auto b = m.coefficients(y0);
    auto spread_at = [&](double t) { return spread(m.evaluate(b, t)); };

    double lo = 0.0, hi = 1.0;
    while (spread_at(hi) >= epsilon) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) {
            throw Error(ErrorCode::convergence,
                        "spread stays above epsilon=" + fmt(epsilon) + " up to t=1e12");
        }
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (spread_at(mid) < epsilon) hi = mid;
        else lo = mid;
    }
    return hi;
}

void RoundSchedule::validate() const {
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        std::vector<bool> used(n, false);
        for (auto [a, b] : rounds[r].pairs) {
            const std::string where = "round " + std::to_string(r) + ": ";
            if (a >= n || b >= n) {
                throw ValidationError(where + "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                      ") outside 0.." + std::to_string(n - 1));
            }
            if (a == b) throw ValidationError(where + "node " + std::to_string(a) + " paired with itself");
            if (rounds[r].subgraph) continue;
            if (used[a] || used[b]) {
                throw ValidationError(where + "node " + std::to_string(used[a] ? a : b) +
                                      " appears in two pairs");
            }
            used[a] = used[b] = true;
        }
    }
}

RoundSchedule parse_round_schedule(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
        throw ParseError(1 + static_cast<std::size_t>(std::count(upto.begin(), upto.end(), '\n')),
                         "invalid schedule JSON");
    }
    RoundSchedule s;
    try {
        s.n = doc.at("n").get<std::size_t>();
        for (const auto& entry : doc.at("rounds")) {
            Round r;
            const nlohmann::json* pairs = &entry;
            if (entry.is_object()) {
                r.subgraph = entry.value("subgraph", false);
                pairs = &entry.at("pairs");
            }
            for (const auto& p : *pairs) {
                if (!p.is_array() || p.size() != 2) throw ValidationError("each pair must be [u, v]");
                r.pairs.emplace_back(p[0].get<Node>(), p[1].get<Node>());
            }
            s.rounds.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed schedule: ") + e.what());
    }
    s.validate();
    return s;
}

std::string round_schedule_json(const RoundSchedule& schedule) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : schedule.rounds) {
        nlohmann::json pairs = nlohmann::json::array();
        for (auto [a, b] : r.pairs) pairs.push_back({a, b});
        if (r.subgraph) rounds.push_back({{"subgraph", true}, {"pairs", pairs}});
        else rounds.push_back(pairs);
    }
    return nlohmann::json{{"n", schedule.n}, {"rounds", rounds}}.dump();
}

std::string RoundRule::name() const {
    if (kind == Kind::pair_average) return "pair_average";
    return "exponential:" + fmt(t_round);
}

RoundRule parse_round_rule(std::string_view text) {
    if (text == "pair_average") return {};
    if (text.rfind("exponential", 0) == 0) {
        RoundRule r{RoundRule::Kind::exponential, 1.0};
        if (text.size() > 11) {
            if (text[11] != ':') throw DomainError("unknown round rule `" + std::string(text) + "`");
            const auto arg = text.substr(12);
            auto res = std::from_chars(arg.data(), arg.data() + arg.size(), r.t_round);
            if (res.ec != std::errc() || res.ptr != arg.data() + arg.size() || !(r.t_round > 0.0)) {
                throw DomainError("exponential round duration must be a positive number");
            }
        }
        return r;
    }
    throw DomainError("unknown round rule `" + std::string(text) + "`");
}

Trajectory run_rounds(const RoundSchedule& schedule, std::span<const double> y0, RoundRule rule) {
    if (schedule.rounds.empty()) throw DomainError("round schedule is empty");
    schedule.validate();
    require_size(y0, schedule.n, "y0");
    Trajectory tr;
    tr.method = "rounds";
    std::vector<double> y(y0.begin(), y0.end());
    tr.times.push_back(0.0);
    tr.samples.push_back(y);
    for (std::size_t r = 0; r < schedule.rounds.size(); ++r) {
        apply_round(schedule.rounds[r], schedule.n, y, rule);
        tr.times.push_back(static_cast<double>(r + 1));
        tr.samples.push_back(y);
    }
    return tr;
}

MemoryProtocol four_cluster_protocol() {
    constexpr std::size_t clusters = 4, size = 4;
    // The three perfect matchings of K4, used on cluster indices and on the
    // members inside each cluster.
    constexpr std::pair<std::size_t, std::size_t> factor[3][2] = {
        {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};

    Round inter;
    for (std::size_t member = 0; member < size; ++member) {
        const auto& f = factor[member < 3 ? member : 0];
        for (auto [a, b] : f) inter.pairs.emplace_back(a * size + member, b * size + member);
    }
    std::sort(inter.pairs.begin(), inter.pairs.end());

    std::vector<Round> within(3);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < clusters; ++c)
            for (auto [a, b] : factor[r]) within[r].pairs.emplace_back(c * size + a, c * size + b);

    MemoryProtocol p;
    p.name = "four_cluster: 4x4 cliques, balanced inter-cluster matching, 3-round round-robin within";
    p.treatment1.n = p.treatment2.n = clusters * size;
    p.treatment1.rounds = {inter, within[0], within[1], within[2]};
    p.treatment2.rounds = {within[0], within[1], within[2], inter};
    return p;
}

double population_sd(std::span<const double> y) {
    if (y.empty()) return 0.0;
    double mean = 0.0;
    for (double x : y) mean += x;
    mean /= static_cast<double>(y.size());
    double ss = 0.0;
    for (double x : y) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(y.size()));
}

MemoryResult memory_experiment(std::size_t reps, std::uint64_t seed,
                               const MemoryProtocol& protocol, RoundRule rule,
                               std::size_t workers) {
    if (reps < 1) throw DomainError("memory experiment needs reps >= 1");
    const std::size_t n = protocol.treatment1.n;
    if (protocol.treatment2.n != n) throw ValidationError("treatments must share the node set");
    protocol.treatment1.validate();
    protocol.treatment2.validate();

    std::vector<double> sd1(reps), sd2(reps);
    parallel_for(reps, workers, [&](std::size_t rep) {
        Rng rng(stream_seed(seed, rep));
        std::vector<double> y0(n);
        for (auto& x : y0) x = static_cast<double>(rng.below(2));
        auto y1 = y0, y2 = y0;
        for (const auto& r : protocol.treatment1.rounds) apply_round(r, n, y1, rule);
        for (const auto& r : protocol.treatment2.rounds) apply_round(r, n, y2, rule);
        sd1[rep] = population_sd(y1);
        sd2[rep] = population_sd(y2);
    });

    MemoryResult out;
    out.reps = reps;
    out.seed = seed;
    out.rule = rule.name();
    for (std::size_t i = 0; i < reps; ++i) {
        out.mean_sd1 += sd1[i];
        out.mean_sd2 += sd2[i];
    }
    out.mean_sd1 /= static_cast<double>(reps);
    out.mean_sd2 /= static_cast<double>(reps);
    out.mean_difference = out.mean_sd2 - out.mean_sd1;
    if (reps > 1) {
        double ss = 0.0;
        for (std::size_t i = 0; i < reps; ++i) {
            const double d = sd2[i] - sd1[i] - out.mean_difference;
            ss += d * d;
        }
        out.standard_error = std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps));
    }
    return out;
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::ostringstream os;
    const std::size_t n = trajectory.samples.empty() ? 0 : trajectory.samples.front().size();
    os << 't';
    for (std::size_t i = 0; i < n; ++i) os << ",y_" << i;
    os << ",spread\n";
    for (std::size_t s = 0; s < trajectory.samples.size(); ++s) {
        os << fmt(trajectory.times[s]);
        for (double x : trajectory.samples[s]) os << ',' << fmt(x);
        os << ',' << fmt(spread(trajectory.samples[s])) << '\n';
    }
    return os.str();
}

}  // namespace cohesion
