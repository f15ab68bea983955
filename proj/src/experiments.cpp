#include "cohesion/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "cohesion/dynamics.hpp"
#include "cohesion/error.hpp"
#include "cohesion/fitting.hpp"
#include "cohesion/generators.hpp"
#include "cohesion/metrics.hpp"
#include "cohesion/parallel.hpp"
#include "cohesion/random.hpp"

namespace cohesion {

namespace detail {
extern const std::string_view kTargetsJson;
}

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

const json& targets() {
    static const json doc = json::parse(detail::kTargetsJson);
    return doc;
}

std::vector<double> target_input(const char* key) {
    return targets().at("inputs").at(key).get<std::vector<double>>();
}

struct Stat {
    double mean = 0.0;
    double se = 0.0;
};

Stat stat_of(std::span<const double> xs) {
    Stat s;
    if (xs.empty()) return s;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) s.mean += x;
    s.mean /= n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.se = std::sqrt(ss / (n - 1.0) / n);
    }
    return s;
}

ojson stat_json(const Stat& s) { return ojson{{"mean", s.mean}, {"se", s.se}}; }

ojson fit_json(const FitResult& f) {
    ojson params = ojson::object();
    for (std::size_t i = 0; i < f.names.size(); ++i) params[f.names[i]] = f.params[i];
    return ojson{{"model", f.model}, {"method", f.method}, {"params", params},
                 {"rss", f.rss},     {"r2", f.r2},         {"iterations", f.iterations}};
}

// Comparisons against the embedded targets document.
class Checker {
public:
    void value(const std::string& name, double observed) {
        const auto& all = targets().at("targets");
        auto it = all.find(name);
        if (it == all.end()) return;
        const json& t = *it;
        const std::string mode = t.at("mode");
        TargetCheck c;
        c.name = name;
        c.observed = observed;
        c.anchor = t.value("anchor", "");
        if (mode == "printed") {
            const int d = t.at("decimals");
            const double v = t.at("value");
            const double scale = std::pow(10.0, d);
            c.pass = std::abs(std::round(observed * scale) - std::round(v * scale)) < 0.5;
            c.expectation = fmt(v) + " at " + std::to_string(d) + " decimals";
        } else if (mode == "relative") {
            const double v = t.at("value"), tol = t.at("tolerance");
            c.pass = std::abs(observed - v) <= tol * std::abs(v);
            c.expectation = fmt(v) + " +/- " + fmt(100 * tol) + "%";
        } else if (mode == "absolute") {
            const double v = t.at("value"), tol = t.at("tolerance");
            c.pass = std::abs(observed - v) <= tol;
            c.expectation = fmt(v) + " +/- " + fmt(tol);
        } else if (mode == "range") {
            const double lo = t.at("min"), hi = t.at("max");
            c.pass = observed >= lo && observed <= hi;
            c.expectation = "[" + fmt(lo) + ", " + fmt(hi) + "]";
            if (t.contains("reference")) c.expectation += ", reference " + fmt(t.at("reference").get<double>());
        } else if (mode == "at_least") {
            const double v = t.at("value");
            c.pass = observed >= v;
            c.expectation = ">= " + fmt(v);
        } else if (mode == "at_most") {
            const double v = t.at("value");
            c.pass = observed <= v;
            c.expectation = "<= " + fmt(v);
        } else if (mode == "greater") {
            const double v = t.at("value");
            c.pass = observed > v;
            c.expectation = "> " + fmt(v);
        } else if (mode == "true") {
            c.pass = observed != 0.0;
            c.expectation = "true";
        } else {
            throw ValidationError("targets document: unknown mode `" + mode + "` for " + name);
        }
        checks_.push_back(c);
    }

    void flag(const std::string& name, bool observed) { value(name, observed ? 1.0 : 0.0); }

    const std::vector<TargetCheck>& checks() const { return checks_; }

    ojson to_json() const {
        ojson arr = ojson::array();
        for (const auto& c : checks_) {
            arr.push_back(ojson{{"name", c.name},
                                {"observed", c.observed},
                                {"expected", c.expectation},
                                {"anchor", c.anchor},
                                {"pass", c.pass}});
        }
        return arr;
    }

private:
    std::vector<TargetCheck> checks_;
};

class Csv {
public:
    explicit Csv(std::initializer_list<std::string_view> header) {
        bool first = true;
        for (auto h : header) {
            if (!first) out_ << ',';
            out_ << h;
            first = false;
        }
        out_ << '\n';
    }

    template <typename... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        ((put(cells, first)), ...);
        out_ << '\n';
    }

    std::string str() const { return out_.str(); }

private:
    void put(double x, bool& first) { sep(first), out_ << fmt(x); }
    void put(std::size_t x, bool& first) { sep(first), out_ << x; }
    void put(int x, bool& first) { sep(first), out_ << x; }
    void put(const std::string& s, bool& first) { sep(first), out_ << s; }
    void put(const char* s, bool& first) { sep(first), out_ << s; }
    void sep(bool& first) {
        if (!first) out_ << ',';
        first = false;
    }

    std::ostringstream out_;
};

struct Series {
    std::string name;
    std::vector<Point> points;
    bool line = false;  // polyline instead of markers
};

std::string svg_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};
    constexpr double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
            x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
        }
    if (!(x0 <= x1)) x0 = 0, x1 = 1;
    if (!(y0 <= y1)) y0 = 0, y1 = 1;
    if (x0 == x1) x0 -= 0.5, x1 += 0.5;
    if (y0 == y1) y0 -= 0.5, y1 += 0.5;
    auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return std::string(buf);
    };
    auto px = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", v);
        return std::string(buf);
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << svg_escape(title) << "</text>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4.0, yv = y0 + (y1 - y0) * i / 4.0;
        o << "<text x=\"" << px(sx(xv)) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
          << num(xv) << "</text>\n";
        o << "<text x=\"" << L - 6 << "\" y=\"" << px(sy(yv) + 4) << "\" text-anchor=\"end\">"
          << num(yv) << "</text>\n";
    }
    o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
      << svg_escape(xlabel) << "</text>\n";
    o << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (T + H - B) / 2 << ")\">" << svg_escape(ylabel) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = colors[k % 5];
        if (s.line) {
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& p : s.points)
                if (std::isfinite(p.x) && std::isfinite(p.y)) o << px(sx(p.x)) << ',' << px(sy(p.y)) << ' ';
            o << "\"/>\n";
        } else {
            for (const auto& p : s.points)
                if (std::isfinite(p.x) && std::isfinite(p.y))
                    o << "<circle cx=\"" << px(sx(p.x)) << "\" cy=\"" << px(sy(p.y))
                      << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        o << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 14 * (k + 1) << "\" fill=\"" << color
          << "\">" << svg_escape(s.name) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::vector<Point> curve(const FitResult& f, double lo, double hi, std::size_t samples = 100) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        pts.push_back({x, f.predict(x)});
    }
    return pts;
}

// Parameters of one run. `params` holds the effective experiment parameters
// (defaults merged with overrides) and is echoed into the report.
struct Context {
    const ExperimentConfig& config;
    std::size_t reps;
    LaplacianKind kind;
    json params;
    Checker checker;
    ojson results = ojson::object();
    std::map<std::string, std::string> files;

    template <typename T>
    T param(const char* key) const {
        try {
            return params.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ValidationError(std::string("parameter `") + key + "`: " + e.what());
        }
    }
};

struct Experiment {
    std::string id;
    std::size_t default_reps;  // 0: deterministic, reps is ignored
    LaplacianKind default_kind;
    json default_params;
    std::function<void(Context&)> run;
};

// ---------------------------------------------------------------- kearns sweep

struct SweepRow {
    double p;
    std::vector<double> lambda2, distance, kappa;
};

std::vector<SweepRow> kearns_sweep(const Context& ctx, bool with_kappa) {
    const auto p_list = ctx.param<std::vector<double>>("p_list");
    for (double p : p_list)
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p_list entries must lie in [0, 1], got " + fmt(p));
    const KearnsLayout layout = ctx.param<std::string>("layout") == "ring" ? KearnsLayout::ring_distinct
                                                                             : KearnsLayout::chain_shared;
    if (auto l = ctx.param<std::string>("layout"); l != "ring" && l != "chain")
        throw ValidationError("layout must be `chain` or `ring`, got `" + l + "`");
    const Graph base = kearns_base(layout);
    RewireConfig rc;
    rc.mode = parse_rewire_mode(ctx.param<std::string>("rewire_mode"));
    rc.groups = kearns_groups();

    std::vector<SweepRow> rows(p_list.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].p = p_list[i];
        rows[i].lambda2.resize(ctx.reps);
        rows[i].distance.resize(ctx.reps);
        rows[i].kappa.resize(ctx.reps);
    }
    parallel_for(rows.size() * ctx.reps, ctx.config.workers, [&](std::size_t idx) {
        const std::size_t pi = idx / ctx.reps, r = idx % ctx.reps;
        RewireConfig cfg = rc;
        cfg.p = rows[pi].p;
        const Graph g = rewire(base, cfg, stream_seed(stream_seed(ctx.config.seed, pi), r));
        rows[pi].lambda2[r] = algebraic_connectivity(g, ctx.kind);
        rows[pi].distance[r] = distance_summary(g).mean_distance;
        if (with_kappa) rows[pi].kappa[r] = static_cast<double>(vertex_connectivity(g));
    });
    return rows;
}

// t value of the coloring experiment at rewiring probability p, if listed.
std::optional<std::size_t> coloring_index(double p) {
    const auto ps = target_input("coloring_p");
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (std::abs(ps[i] - p) < 1e-12) return i;
    return std::nullopt;
}

void run_table1(Context& ctx) {
    const auto rows = kearns_sweep(ctx, true);
    const auto ts = target_input("coloring_t");
    const auto myop = target_input("coloring_myop");

    Csv csv({"p", "t", "myop", "lambda2", "lambda2_se", "mean_distance", "mean_distance_se", "kappa",
             "kappa_se"});
    ojson out_rows = ojson::array();
    std::vector<Point> pts;
    for (const auto& row : rows) {
        const Stat l = stat_of(row.lambda2), d = stat_of(row.distance), k = stat_of(row.kappa);
        ojson jr{{"p", row.p}};
        const auto ci = coloring_index(row.p);
        if (ci) {
            jr["t"] = ts[*ci];
            jr["myop"] = myop[*ci];
            pts.push_back({l.mean, ts[*ci]});
            csv.row(row.p, ts[*ci], myop[*ci], l.mean, l.se, d.mean, d.se, k.mean, k.se);
        } else {
            csv.row(row.p, "", "", l.mean, l.se, d.mean, d.se, k.mean, k.se);
        }
        jr["lambda2"] = stat_json(l);
        jr["mean_distance"] = stat_json(d);
        jr["kappa"] = stat_json(k);
        out_rows.push_back(jr);

        const std::string prefix = "table1.p=" + fmt(row.p) + ".";
        ctx.checker.value(prefix + "lambda2", l.mean);
        ctx.checker.value(prefix + "mean_distance", d.mean);
        ctx.checker.value(prefix + "kappa", k.mean);
    }
    ctx.results["rows"] = out_rows;
    ctx.files["table1.csv"] = csv.str();

    if (pts.size() < 3) {
        ctx.results["fits"] = nullptr;
        return;
    }
    const FitResult loglog = fit_power_law(pts, PowerLawMethod::loglog_ols);
    const FitResult nls = fit_power_law(pts, PowerLawMethod::nls);
    const FitResult line = fit_linear(pts);
    ctx.results["fits"] = ojson{{"loglog_ols", fit_json(loglog)}, {"nls", fit_json(nls)}, {"linear", fit_json(line)}};
    ctx.checker.value("table1.fit.b", nls.param("b"));
    ctx.checker.flag("table1.fit.power_law_beats_line", nls.rss < line.rss);

    double lo = INFINITY, hi = 0;
    for (const auto& p : pts) lo = std::min(lo, p.x), hi = std::max(hi, p.x);
    Csv c({"lambda2", "power_law_nls", "power_law_loglog", "linear"});
    const auto grid = curve(nls, lo, hi);
    for (const auto& g : grid) c.row(g.x, g.y, loglog.predict(g.x), line.predict(g.x));
    ctx.files["table1_curve.csv"] = c.str();
    ctx.files["table1_curve.svg"] =
        svg_plot("time to completion vs algebraic connectivity", "lambda2", "t",
                 {{"observed", pts, false}, {"power law (nls)", grid, true}, {"straight line", curve(line, lo, hi), true}});
}

void run_fig4a(Context& ctx) {
    const auto rows = kearns_sweep(ctx, false);
    const auto ts = target_input("coloring_t");
    std::vector<Point> pts;
    Csv csv({"p", "mean_distance", "mean_distance_se", "t"});
    for (const auto& row : rows) {
        const auto ci = coloring_index(row.p);
        if (!ci) continue;
        const Stat d = stat_of(row.distance);
        pts.push_back({d.mean, ts[*ci]});
        csv.row(row.p, d.mean, d.se, ts[*ci]);
    }
    ctx.files["fig4a.csv"] = csv.str();
    if (pts.size() < 3) throw ValidationError("fig4a needs at least 3 p values with known t");
    const FitResult line = fit_linear(pts);
    ctx.results["points"] = pts.size();
    ctx.results["linear_fit"] = fit_json(line);
    double lo = INFINITY, hi = 0;
    for (const auto& p : pts) lo = std::min(lo, p.x), hi = std::max(hi, p.x);
    ctx.files["fig4a.svg"] = svg_plot("time to completion vs mean distance", "mean distance", "t",
                                      {{"observed", pts, false}, {"straight line", curve(line, lo, hi), true}});
}

// ----------------------------------------------------------------------- fig1

void run_fig1(Context& ctx) {
    const auto n = ctx.param<std::size_t>("n");
    const auto m = ctx.param<std::size_t>("m");
    const double ratio = ctx.param<double>("epsilon_ratio");
    const auto samples = ctx.param<std::size_t>("samples");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ValidationError("epsilon_ratio must lie in (0, 1)");
    if (samples < 2) throw ValidationError("samples must be at least 2");

    struct Pair {
        double l2a, l2b, ta, tb;
        bool below_everywhere;
    };
    std::vector<Pair> pairs(ctx.reps);
    parallel_for(ctx.reps, ctx.config.workers, [&](std::size_t r) {
        const std::uint64_t s = stream_seed(ctx.config.seed, r);
        const Graph a = random_gnm(n, m, stream_seed(s, 1));
        const Graph b = random_clustered(n, m, stream_seed(s, 2));
        Rng rng(stream_seed(s, 3));
        std::vector<double> y0(n);
        for (auto& y : y0) y = rng.uniform();
        const double eps = ratio * spread(y0);
        Pair& p = pairs[r];
        p.l2a = algebraic_connectivity(a, ctx.kind);
        p.l2b = algebraic_connectivity(b, ctx.kind);
        p.ta = convergence_time(a, ctx.kind, y0, eps);
        p.tb = convergence_time(b, ctx.kind, y0, eps);
        const double horizon = std::max(p.ta, p.tb);
        std::vector<double> times(samples);
        for (std::size_t i = 0; i < samples; ++i)
            times[i] = horizon * static_cast<double>(i + 1) / static_cast<double>(samples);
        const auto sa = diffuse_spectral(a, ctx.kind, y0, times).spreads();
        const auto sb = diffuse_spectral(b, ctx.kind, y0, times).spreads();
        const bool a_high = p.l2a >= p.l2b;
        p.below_everywhere = true;
        for (std::size_t i = 0; i < samples; ++i)
            if (!(a_high ? sa[i] < sb[i] : sb[i] < sa[i])) p.below_everywhere = false;
    });

    std::size_t faster = 0, below = 0;
    Csv csv({"pair", "lambda2_a", "lambda2_b", "time_a", "time_b", "higher_converges_faster",
             "higher_below_everywhere"});
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        const Pair& p = pairs[r];
        const bool ok = p.l2a >= p.l2b ? p.ta < p.tb : p.tb < p.ta;
        faster += ok;
        below += p.below_everywhere;
        csv.row(r, p.l2a, p.l2b, p.ta, p.tb, ok ? 1 : 0, p.below_everywhere ? 1 : 0);
    }
    ctx.files["fig1_pairs.csv"] = csv.str();
    const double frac = static_cast<double>(faster) / static_cast<double>(ctx.reps);
    ctx.results["pairs"] = ctx.reps;
    ctx.results["higher_converges_faster"] = faster;
    ctx.results["higher_below_at_all_sampled_times"] = below;
    ctx.results["faster_fraction"] = frac;
    ctx.checker.value("fig1.faster_fraction", frac);

    // trajectories of the first pair
    const std::uint64_t s = stream_seed(ctx.config.seed, 0);
    const Graph a = random_gnm(n, m, stream_seed(s, 1));
    const Graph b = random_clustered(n, m, stream_seed(s, 2));
    Rng rng(stream_seed(s, 3));
    std::vector<double> y0(n);
    for (auto& y : y0) y = rng.uniform();
    const double horizon = 1.25 * std::max(pairs[0].ta, pairs[0].tb);
    std::vector<double> times(201);
    for (std::size_t i = 0; i < times.size(); ++i) times[i] = horizon * static_cast<double>(i) / 200.0;
    const Trajectory ta = diffuse_spectral(a, ctx.kind, y0, times);
    const Trajectory tb = diffuse_spectral(b, ctx.kind, y0, times);
    const auto sa = ta.spreads(), sb = tb.spreads();
    Csv spreads({"t", "spread_a", "spread_b"});
    std::vector<Point> pa, pb;
    for (std::size_t i = 0; i < times.size(); ++i) {
        spreads.row(times[i], sa[i], sb[i]);
        pa.push_back({times[i], sa[i]});
        pb.push_back({times[i], sb[i]});
    }
    ctx.results["example"] = ojson{{"lambda2_a", pairs[0].l2a}, {"lambda2_b", pairs[0].l2b}};
    ctx.files["fig1_spread.csv"] = spreads.str();
    ctx.files["fig1_network_a.csv"] = trajectory_csv(ta);
    ctx.files["fig1_network_b.csv"] = trajectory_csv(tb);
    ctx.files["fig1_network_a.edges"] = to_edge_list(a);
    ctx.files["fig1_network_b.edges"] = to_edge_list(b);
    ctx.files["fig1_spread.svg"] =
        svg_plot("spread of opinions", "t", "spread",
                 {{"random (lambda2 " + fmt(std::round(pairs[0].l2a * 1000) / 1000) + ")", pa, true},
                  {"clustered (lambda2 " + fmt(std::round(pairs[0].l2b * 1000) / 1000) + ")", pb, true}});
}

// ----------------------------------------------------------------------- fig3

void run_fig3(Context& ctx) {
    const auto n_min = ctx.param<std::size_t>("n_min");
    const auto n_max = ctx.param<std::size_t>("n_max");
    const double dens = ctx.param<double>("density");
    const double gamma = ctx.param<double>("gamma");
    if (n_min < 3 || n_max < n_min) throw ValidationError("need 3 <= n_min <= n_max");
    if (!(dens > 0.0 && dens <= 1.0)) throw ValidationError("density must lie in (0, 1]");

    struct Sample {
        BoundReport bounds;
        double lambda2;
        std::size_t edges;
    };
    const char* families[] = {"poisson", "skewed"};
    std::vector<Sample> samples(2 * ctx.reps);
    std::vector<std::size_t> sizes(ctx.reps);
    for (std::size_t r = 0; r < ctx.reps; ++r) {
        Rng rng(stream_seed(stream_seed(ctx.config.seed, 0), r));
        sizes[r] = n_min + rng.below(n_max - n_min + 1);
    }
    parallel_for(samples.size(), ctx.config.workers, [&](std::size_t idx) {
        const std::size_t f = idx / ctx.reps, r = idx % ctx.reps;
        const std::uint64_t s = stream_seed(stream_seed(ctx.config.seed, f + 1), r);
        const Graph g = f == 0 ? random_poisson(sizes[r], dens, s) : random_skewed(sizes[r], dens, s, gamma);
        Sample& out = samples[idx];
        out.bounds = bound_report(g);
        out.lambda2 = ctx.kind == LaplacianKind::binary ? out.bounds.lambda2 : algebraic_connectivity(g, ctx.kind);
        out.edges = g.edge_count();
    });

    Csv csv({"family", "n", "edges", "lambda2", "binary_lambda2", "mean_distance", "diameter",
             "mean_distance_bound", "diameter_bound", "kappa", "k_min", "bounds_hold"});
    std::size_t violations = 0;
    ojson fam_json = ojson::object();
    std::vector<FitResult> fits;
    std::vector<std::vector<Point>> fam_pts(2), bound_pts(2);
    for (std::size_t f = 0; f < 2; ++f) {
        std::size_t fam_viol = 0;
        for (std::size_t r = 0; r < ctx.reps; ++r) {
            const Sample& s = samples[f * ctx.reps + r];
            const BoundReport& b = s.bounds;
            const bool ok = b.all_satisfied();
            fam_viol += !ok;
            csv.row(families[f], b.n, s.edges, s.lambda2, b.lambda2, b.mean_distance, b.diameter,
                    b.mean_distance_bound.value, b.diameter_bound.value, b.kappa, b.k_min, ok ? 1 : 0);
            fam_pts[f].push_back({b.mean_distance, s.lambda2});
            bound_pts[f].push_back({b.mean_distance, b.mean_distance_bound.value});
        }
        violations += fam_viol;
        fits.push_back(fit_hyperbola(fam_pts[f]));
        fam_json[families[f]] = ojson{{"graphs", ctx.reps}, {"bound_violations", fam_viol}, {"hyperbola", fit_json(fits[f])}};
    }
    const double ratio = (1.0 - fits[1].r2) / (1.0 - fits[0].r2);
    ctx.results["families"] = fam_json;
    ctx.results["bound_violations"] = violations;
    ctx.results["misfit_ratio"] = ratio;
    ctx.checker.value("fig3.bound_violations", static_cast<double>(violations));
    ctx.checker.value("fig3.misfit_ratio", ratio);
    ctx.files["fig3.csv"] = csv.str();

    std::vector<Series> a, b;
    for (std::size_t f = 0; f < 2; ++f) {
        double lo = INFINITY, hi = 0;
        for (const auto& p : fam_pts[f]) lo = std::min(lo, p.x), hi = std::max(hi, p.x);
        a.push_back({std::string(families[f]) + " lambda2", fam_pts[f], false});
        b.push_back({std::string(families[f]), fam_pts[f], false});
        b.push_back({std::string(families[f]) + " fit", curve(fits[f], lo, hi), true});
    }
    a.push_back({"mean-distance bound", bound_pts[0], false});
    a.push_back({"mean-distance bound (skewed)", bound_pts[1], false});
    ctx.files["fig3a.svg"] = svg_plot("lambda2 and its lower bound", "mean distance", "lambda2", a);
    ctx.files["fig3b.svg"] = svg_plot("lambda2 against mean distance", "mean distance", "lambda2", b);
}

// ---------------------------------------------------------------------- fig4b

void run_fig4b(Context& ctx) {
    const auto lo = ctx.param<std::size_t>("side_min");
    const auto hi = ctx.param<std::size_t>("side_max");
    if (lo < 2 || hi < lo + 2) throw ValidationError("need 2 <= side_min and side_max >= side_min + 2");
    std::vector<Point> pts(hi - lo + 1);
    parallel_for(pts.size(), ctx.config.workers, [&](std::size_t i) {
        const Graph g = square_lattice(lo + i);
        pts[i] = {distance_summary(g).mean_distance, algebraic_connectivity(g, ctx.kind)};
    });
    Csv csv({"side", "n", "mean_distance", "lambda2"});
    for (std::size_t i = 0; i < pts.size(); ++i) csv.row(lo + i, (lo + i) * (lo + i), pts[i].x, pts[i].y);
    const FitResult fit = fit_hyperbola(pts);
    ctx.results["lattices"] = pts.size();
    ctx.results["hyperbola"] = fit_json(fit);
    ctx.checker.value("fig4b.r2", fit.r2);
    ctx.files["fig4b.csv"] = csv.str();
    ctx.files["fig4b.svg"] = svg_plot("square lattices", "mean distance", "lambda2",
                                      {{"lattice", pts, false}, {"hyperbola fit", curve(fit, pts.front().x, pts.back().x), true}});
}

// ---------------------------------------------------------------------- fig4c

void run_fig4c(Context& ctx) {
    const auto n_each = ctx.param<std::size_t>("n_each");
    const auto k_max = ctx.param<std::size_t>("k_max");
    const auto k_check = ctx.param<std::size_t>("k_check");
    if (k_max < 3) throw ValidationError("k_max must be at least 3");
    struct Row {
        double lambda2;
        std::size_t kappa;
    };
    std::vector<Row> rows(k_max);
    parallel_for(k_max, ctx.config.workers, [&](std::size_t i) {
        const Graph g = two_cliques_bridged(n_each, i + 1);
        rows[i] = {algebraic_connectivity(g, ctx.kind), vertex_connectivity(g)};
    });
    Csv csv({"k", "kappa", "lambda2"});
    std::vector<Point> pts;
    bool matches = true;
    for (std::size_t i = 0; i < k_max; ++i) {
        csv.row(i + 1, rows[i].kappa, rows[i].lambda2);
        pts.push_back({static_cast<double>(rows[i].kappa), rows[i].lambda2});
        if (i + 1 <= k_check && rows[i].kappa != i + 1) matches = false;
    }
    const FitResult fit = fit_linear(pts);
    ctx.results["n_each"] = n_each;
    ctx.results["linear_fit"] = fit_json(fit);
    ctx.results["kappa_equals_k_up_to"] = k_check;
    ctx.results["kappa_equals_k"] = matches;
    ctx.checker.value("fig4c.r2", fit.r2);
    ctx.checker.flag("fig4c.kappa_equals_k", matches);
    ctx.files["fig4c.csv"] = csv.str();
    ctx.files["fig4c.svg"] = svg_plot("two bridged cliques", "node-independent paths", "lambda2",
                                      {{"networks", pts, false}, {"linear fit", curve(fit, pts.front().x, pts.back().x), true}});
}

// ---------------------------------------------------------------------- fig4d

void run_fig4d(Context& ctx) {
    const auto lo = ctx.param<std::size_t>("l_min");
    const auto hi = ctx.param<std::size_t>("l_max");
    if (lo < 6 || hi < lo + 1) throw ValidationError("need 6 <= l_min < l_max");
    Csv csv({"l", "mean_distance_cycle", "mean_distance_chord", "reduction"});
    std::vector<Point> pts;
    for (std::size_t l = lo; l <= hi; ++l) {
        const double before = distance_summary(cycle(l)).mean_distance;
        const double after = distance_summary(chord_midway(l)).mean_distance;
        csv.row(l, before, after, before - after);
        pts.push_back({static_cast<double>(l), before - after});
    }
    bool strict = true, parity = true;
    ojson dips = ojson::array();
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i].y > pts[i - 1].y)) {
            strict = false;
            dips.push_back(ojson{{"from", pts[i - 1].x}, {"to", pts[i].x}});
        }
        if (i >= 2 && !(pts[i].y > pts[i - 2].y)) parity = false;
    }
    ctx.results["strictly_increasing"] = strict;
    ctx.results["non_increasing_steps"] = dips;
    ctx.results["increasing_within_parity"] = parity;
    ctx.checker.flag("fig4d.strictly_increasing", strict);
    ctx.files["fig4d.csv"] = csv.str();
    ctx.files["fig4d.svg"] = svg_plot("reduction of mean distance by a midway chord", "cycle length",
                                      "reduction", {{"reduction", pts, false}});
}

// ----------------------------------------------------------------------- fig5

void run_fig5(Context& ctx) {
    struct Row {
        std::size_t n;
        std::size_t cycle;
        double l2, l2_rel, l2_mis, d, d_rel, d_mis;
        Edge removed, rel_added, mis_added;
    };
    std::vector<Row> rows(ctx.reps);
    parallel_for(ctx.reps, ctx.config.workers, [&](std::size_t r) {
        const Graph g = triad_on_cycle(stream_seed(ctx.config.seed, r));
        const ChordMove rel = relocate_chord(g);
        const ChordMove mis = misplace_chord(g);
        rows[r] = {g.node_count(),
                   rel.cycle.length(),
                   algebraic_connectivity(g, ctx.kind),
                   algebraic_connectivity(rel.graph, ctx.kind),
                   algebraic_connectivity(mis.graph, ctx.kind),
                   distance_summary(g).mean_distance,
                   distance_summary(rel.graph).mean_distance,
                   distance_summary(mis.graph).mean_distance,
                   rel.removed,
                   rel.added,
                   mis.added};
    });
    auto edge = [](const Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); };
    Csv csv({"graph", "n", "cycle_length", "lambda2", "lambda2_relocated", "lambda2_misplaced", "mean_distance",
             "mean_distance_relocated", "mean_distance_misplaced", "removed", "relocated_to", "misplaced_to"});
    std::size_t up = 0, down = 0;
    std::vector<Point> rel_pts, mis_pts;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Row& w = rows[r];
        up += w.l2_rel > w.l2;
        down += w.l2_mis < w.l2;
        csv.row(r, w.n, w.cycle, w.l2, w.l2_rel, w.l2_mis, w.d, w.d_rel, w.d_mis, edge(w.removed),
                edge(w.rel_added), edge(w.mis_added));
        rel_pts.push_back({w.l2, w.l2_rel});
        mis_pts.push_back({w.l2, w.l2_mis});
    }
    const double reps = static_cast<double>(ctx.reps);
    ctx.results["graphs"] = ctx.reps;
    ctx.results["relocate_increases"] = up;
    ctx.results["misplace_decreases"] = down;
    ctx.results["example"] = ojson{{"lambda2", rows[0].l2},
                                   {"lambda2_relocated", rows[0].l2_rel},
                                   {"lambda2_misplaced", rows[0].l2_mis}};
    ctx.checker.value("fig5.relocate_increase_fraction", up / reps);
    ctx.checker.value("fig5.misplace_decrease_fraction", down / reps);
    ctx.files["fig5.csv"] = csv.str();

    const Graph g = triad_on_cycle(stream_seed(ctx.config.seed, 0));
    ctx.files["fig5_example.edges"] = to_edge_list(g);
    ctx.files["fig5_example_relocated.edges"] = to_edge_list(relocate_chord(g).graph);
    ctx.files["fig5_example_misplaced.edges"] = to_edge_list(misplace_chord(g).graph);
    ctx.files["fig5.svg"] = svg_plot("lambda2 after moving one tie", "lambda2 before", "lambda2 after",
                                     {{"relocated", rel_pts, false}, {"misplaced", mis_pts, false}});
}

// ------------------------------------------------------------------- appendix

void run_appendix(Context& ctx) {
    const RoundRule rule = parse_round_rule(ctx.param<std::string>("rule"));
    const MemoryProtocol protocol = four_cluster_protocol();
    const MemoryResult m = memory_experiment(ctx.reps, ctx.config.seed, protocol, rule, ctx.config.workers);
    const double z = m.standard_error > 0 ? m.mean_difference / m.standard_error : 0.0;
    ctx.results["protocol"] = ojson{{"name", protocol.name},
                                    {"rule", m.rule},
                                    {"treatment1", ojson::parse(round_schedule_json(protocol.treatment1))},
                                    {"treatment2", ojson::parse(round_schedule_json(protocol.treatment2))}};
    ctx.results["mean_sd_treatment1"] = m.mean_sd1;
    ctx.results["mean_sd_treatment2"] = m.mean_sd2;
    ctx.results["mean_difference"] = m.mean_difference;
    ctx.results["standard_error"] = m.standard_error;
    ctx.results["z_score"] = z;
    ctx.checker.value("appendix.z_score", z);
    ctx.checker.value("appendix.difference", m.mean_difference);

    Rng rng(stream_seed(ctx.config.seed, 0));
    std::vector<double> y0(protocol.treatment1.n);
    for (auto& y : y0) y = static_cast<double>(rng.below(2));
    ctx.files["appendix_treatment1.csv"] = trajectory_csv(run_rounds(protocol.treatment1, y0, rule));
    ctx.files["appendix_treatment2.csv"] = trajectory_csv(run_rounds(protocol.treatment2, y0, rule));
}

// -------------------------------------------------------------------- centola

void run_centola(Context& ctx) {
    const auto n = ctx.param<std::size_t>("n");
    const auto m = ctx.param<std::size_t>("m");
    const auto k = ctx.param<std::size_t>("lattice_k");
    const double clique_l2 = algebraic_connectivity(clique(n), ctx.kind);
    const double lattice_l2 = algebraic_connectivity(ring_lattice(n, k), ctx.kind);
    std::vector<double> l2(ctx.reps);
    parallel_for(ctx.reps, ctx.config.workers, [&](std::size_t r) {
        l2[r] = algebraic_connectivity(random_gnm(n, m, stream_seed(ctx.config.seed, r)), ctx.kind);
    });
    const Stat s = stat_of(l2);
    ctx.results["clique_lambda2"] = clique_l2;
    ctx.results["lattice_lambda2"] = lattice_l2;
    ctx.results["random_lambda2"] = stat_json(s);
    ctx.checker.value("centola.clique_lambda2", clique_l2);
    ctx.checker.value("centola.lattice_lambda2", lattice_l2);
    ctx.checker.value("centola.random_lambda2", s.mean);
    Csv csv({"network", "lambda2", "se"});
    csv.row("clique", clique_l2, 0.0);
    csv.row("ring_lattice", lattice_l2, 0.0);
    csv.row("random", s.mean, s.se);
    ctx.files["centola.csv"] = csv.str();
}

const std::vector<Experiment>& registry() {
    static const std::vector<Experiment> all = [] {
        const json sweep = {{"p_list", {0, 0.1, 0.2, 0.4, 0.6, 1}}, {"rewire_mode", "endpoint"}, {"layout", "chain"}};
        std::vector<Experiment> e;
        e.push_back({"table1", 1000, LaplacianKind::row_normalized, sweep, run_table1});
        e.push_back({"fig1", 100, LaplacianKind::row_normalized,
                     {{"n", 12}, {"m", 24}, {"epsilon_ratio", 1e-4}, {"samples", 200}}, run_fig1});
        e.push_back({"fig3", 200, LaplacianKind::binary,
                     {{"n_min", 10}, {"n_max", 50}, {"density", 0.3}, {"gamma", 2.5}}, run_fig3});
        e.push_back({"fig4a", 1000, LaplacianKind::row_normalized, sweep, run_fig4a});
        e.push_back({"fig4b", 0, LaplacianKind::binary, {{"side_min", 2}, {"side_max", 25}}, run_fig4b});
        e.push_back({"fig4c", 0, LaplacianKind::binary, {{"n_each", 30}, {"k_max", 20}, {"k_check", 10}}, run_fig4c});
        e.push_back({"fig4d", 0, LaplacianKind::binary, {{"l_min", 6}, {"l_max", 30}}, run_fig4d});
        e.push_back({"fig5", 50, LaplacianKind::binary, json::object(), run_fig5});
        e.push_back({"appendix", 10000, LaplacianKind::binary, {{"rule", "pair_average"}}, run_appendix});
        e.push_back({"centola", 1000, LaplacianKind::row_normalized,
                     {{"n", 24}, {"m", 48}, {"lattice_k", 4}}, run_centola});
        return e;
    }();
    return all;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& e : registry()) out.push_back(e.id);
        return out;
    }();
    return ids;
}

std::string_view targets_document() { return detail::kTargetsJson; }

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(1, std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config must be a JSON object");
    ExperimentConfig c;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "experiment" || key == "id") {
                c.id = value.get<std::string>();
            } else if (key == "seed") {
                c.seed = value.get<std::uint64_t>();
            } else if (key == "reps") {
                c.reps = value.get<std::size_t>();
            } else if (key == "kind") {
                c.kind = parse_laplacian_kind(value.get<std::string>());
            } else if (key == "params") {
                if (!value.is_object()) throw ValidationError("config `params` must be an object");
                c.params_json = value.dump();
            } else if (key == "workers") {
                c.workers = value.get<std::size_t>();
            } else if (key == "out") {
                // output directory is handled by the caller
            } else {
                throw ValidationError("config: unknown key `" + key + "`");
            }
        } catch (const json::type_error& e) {
            throw ValidationError("config `" + key + "`: " + e.what());
        }
    }
    return c;
}

bool ExperimentResult::all_targets_met() const {
    return std::all_of(checks.begin(), checks.end(), [](const TargetCheck& c) { return c.pass; });
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const auto& reg = registry();
    auto it = std::find_if(reg.begin(), reg.end(), [&](const Experiment& e) { return e.id == config.id; });
    if (it == reg.end()) {
        std::string known;
        for (const auto& e : reg) known += (known.empty() ? "" : ", ") + e.id;
        throw DomainError("unknown experiment `" + config.id + "` (known: " + known + ")");
    }
    const Experiment& exp = *it;

    json overrides;
    try {
        overrides = json::parse(config.params_json);
    } catch (const json::parse_error& e) {
        throw ParseError(1, std::string("params: ") + e.what());
    }
    if (!overrides.is_object()) throw ValidationError("params must be a JSON object");
    json params = exp.default_params.is_null() ? json::object() : exp.default_params;
    for (const auto& [key, value] : overrides.items()) {
        if (!params.contains(key))
            throw ValidationError("experiment `" + exp.id + "` has no parameter `" + key + "`");
        params[key] = value;
    }

    const std::size_t reps = exp.default_reps == 0 ? 1 : (config.reps ? config.reps : exp.default_reps);
    Context ctx{config, reps, config.kind.value_or(exp.default_kind), params, {}, ojson::object(), {}};
    exp.run(ctx);

    ExperimentResult out;
    out.checks = ctx.checker.checks();
    ojson report;
    report["experiment"] = exp.id;
    report["config"] = ojson{{"seed", config.seed},
                             {"reps", reps},
                             {"kind", to_string(ctx.kind)},
                             {"params", ojson::parse(params.dump())}};
    report["targets_version"] = targets().at("version");
    report["results"] = ctx.results;
    report["targets"] = ctx.checker.to_json();
    report["all_targets_met"] = out.all_targets_met();
    out.report_json = report.dump(2) + "\n";
    out.files = std::move(ctx.files);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create `" + dir.string() + "`: " + ec.message());
    auto put = [&](const std::string& name, const std::string& text) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw IoError("cannot write `" + (dir / name).string() + "`");
        f << text;
        if (!f) throw IoError("write failed for `" + (dir / name).string() + "`");
    };
    put("report.json", result.report_json);
    for (const auto& [name, text] : result.files) put(name, text);
    put("timing.json", ojson{{"wall_seconds", result.wall_seconds}}.dump(2) + "\n");
}

}  // namespace cohesion
