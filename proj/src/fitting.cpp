#include "cohesion/fitting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>

#include "cohesion/error.hpp"

namespace cohesion {

namespace {

constexpr std::size_t kMaxIterations = 200;
constexpr double kStepTolerance = 1e-10;

std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void require_points(std::span<const Point> points, const char* model) {
    if (points.size() < 3) {
        throw DomainError(std::string(model) + " fit needs at least 3 points, got " +
                          std::to_string(points.size()));
    }
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("fit input is not finite");
}

void require_spread_x(std::span<const double> xs, const char* model) {
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) {
        throw DomainError(std::string(model) + " fit is degenerate: all x values are equal");
    }
}

struct Line {
    double intercept, slope;
};

Line ols(std::span<const double> xs, std::span<const double> ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    return {my - slope * mx, slope};
}

using Model = std::function<double(double x, const double* p)>;
using Gradient = std::function<void(double x, const double* p, double* g)>;

double rss_of(std::span<const Point> points, const Model& f, const double* p) {
    double s = 0.0;
    for (const auto& pt : points) {
        const double r = pt.y - f(pt.x, p);
        s += r * r;
    }
    return s;
}

// Damped two-parameter Gauss-Newton. `valid` rejects parameter vectors
// outside the model's domain. Returns the iteration count.
std::size_t gauss_newton(std::span<const Point> points, const Model& f, const Gradient& grad,
                         double* p, const std::function<bool(const double*)>& valid,
                         const char* model) {
    double current = rss_of(points, f, p);
    // steps are accepted up to round-off in the RSS; the best iterate seen is
    // what gets returned, so the result never has a larger RSS than the start
    double best[2] = {p[0], p[1]};
    double best_rss = current;
    auto finish = [&](std::size_t iter) {
        p[0] = best[0];
        p[1] = best[1];
        return iter;
    };
    for (std::size_t iter = 1; iter <= kMaxIterations; ++iter) {
        double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
        for (const auto& pt : points) {
            double g[2];
            grad(pt.x, p, g);
            const double r = pt.y - f(pt.x, p);
            a11 += g[0] * g[0];
            a12 += g[0] * g[1];
            a22 += g[1] * g[1];
            b1 += g[0] * r;
            b2 += g[1] * r;
        }
        const double det = a11 * a22 - a12 * a12;
        if (!(std::abs(det) > 1e-300)) return finish(iter);  // flat direction: nothing left to improve
        double step[2] = {(a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det};

        if (std::abs(step[0]) <= kStepTolerance * (1 + std::abs(p[0])) &&
            std::abs(step[1]) <= kStepTolerance * (1 + std::abs(p[1]))) {
            return finish(iter);
        }

        double scale = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving, scale *= 0.5) {
            const double trial[2] = {p[0] + scale * step[0], p[1] + scale * step[1]};
            if (!valid(trial)) continue;
            const double r = rss_of(points, f, trial);
            if (r <= current * (1 + 1e-12)) {
                p[0] = trial[0];
                p[1] = trial[1];
                current = r;
                if (r < best_rss) {
                    best_rss = r;
                    best[0] = p[0];
                    best[1] = p[1];
                }
                accepted = true;
                break;
            }
        }
        if (!accepted) return finish(iter);  // no descent along the GN direction
    }
    throw Error(ErrorCode::convergence, std::string(model) + " Gauss-Newton did not converge in " +
                                            std::to_string(kMaxIterations) + " iterations (last: " +
                                            fmt(p[0]) + ", " + fmt(p[1]) + ")");
}

}  // namespace

double FitResult::param(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return params[i];
    throw DomainError("fit has no parameter `" + std::string(name) + "`");
}

double FitResult::predict(double x) const {
    if (model == "power_law") return params[0] * std::pow(x, -params[1]);
    if (model == "linear") return params[0] + params[1] * x;
    if (model == "hyperbola") return params[0] / (x + params[1]);
    throw DomainError("unknown model `" + model + "`");
}

const char* to_string(PowerLawMethod method) {
    return method == PowerLawMethod::loglog_ols ? "loglog_ols" : "nls";
}

double r_squared(std::span<const Point> points, double rss) {
    double my = 0;
    for (const auto& p : points) my += p.y;
    my /= static_cast<double>(points.size());
    double tss = 0;
    for (const auto& p : points) tss += (p.y - my) * (p.y - my);
    if (tss == 0.0) return rss == 0.0 ? 1.0 : 0.0;
    return 1.0 - rss / tss;
}

FitResult fit_power_law(std::span<const Point> points, PowerLawMethod method) {
    require_points(points, "power-law");
    std::vector<double> lx, ly;
    for (const auto& p : points) {
        if (!(p.x > 0.0) || !(p.y > 0.0)) {
            throw DomainError("power-law fit needs positive coordinates, got (" + fmt(p.x) + ", " +
                              fmt(p.y) + ")");
        }
        lx.push_back(std::log(p.x));
        ly.push_back(std::log(p.y));
    }
    require_spread_x(lx, "power-law");
    const Line line = ols(lx, ly);

    FitResult out;
    out.model = "power_law";
    out.method = to_string(method);
    out.names = {"a", "b"};
    double p[2] = {std::exp(line.intercept), -line.slope};

    const Model f = [](double x, const double* q) { return q[0] * std::pow(x, -q[1]); };
    if (method == PowerLawMethod::nls) {
        const Gradient grad = [](double x, const double* q, double* g) {
            const double v = std::pow(x, -q[1]);
            g[0] = v;
            g[1] = -q[0] * v * std::log(x);
        };
        out.iterations = gauss_newton(points, f, grad, p, [](const double*) { return true; }, "power-law");
    }
    out.params = {p[0], p[1]};
    out.rss = rss_of(points, f, p);
    out.r2 = r_squared(points, out.rss);
    return out;
}

FitResult fit_linear(std::span<const Point> points) {
    require_points(points, "linear");
    std::vector<double> xs, ys;
    for (const auto& p : points) xs.push_back(p.x), ys.push_back(p.y);
    require_spread_x(xs, "linear");
    const Line line = ols(xs, ys);
    FitResult out;
    out.model = "linear";
    out.method = "ols";
    out.names = {"alpha", "beta"};
    out.params = {line.intercept, line.slope};
    const Model f = [](double x, const double* q) { return q[0] + q[1] * x; };
    out.rss = rss_of(points, f, out.params.data());
    out.r2 = r_squared(points, out.rss);
    return out;
}

FitResult fit_hyperbola(std::span<const Point> points) {
    require_points(points, "hyperbola");
    std::vector<double> xs, inv;
    for (const auto& p : points) {
        if (!(p.y > 0.0)) throw DomainError("hyperbola fit needs y > 0, got " + fmt(p.y));
        xs.push_back(p.x);
        inv.push_back(1.0 / p.y);
    }
    require_spread_x(xs, "hyperbola");
    const Line line = ols(xs, inv);
    if (!(line.slope > 0.0)) throw DomainError("hyperbola fit needs y decreasing in x (1/y slope <= 0)");

    double p[2] = {1.0 / line.slope, line.intercept / line.slope};
    const double x_min = *std::min_element(xs.begin(), xs.end());
    const Model f = [](double x, const double* q) { return q[0] / (x + q[1]); };
    const Gradient grad = [](double x, const double* q, double* g) {
        const double d = x + q[1];
        g[0] = 1.0 / d;
        g[1] = -q[0] / (d * d);
    };

    FitResult out;
    out.model = "hyperbola";
    out.method = "linearized+gauss_newton";
    out.names = {"c1", "c2"};
    if (!(x_min + p[1] > 0.0)) {
        // the linearized start puts the pole inside the data; restart from the
        // best c1 at a pole-free c2
        p[1] = x_min > 0.0 ? 0.0 : 1.0 - x_min;
        double gy = 0, gg = 0;
        for (const auto& pt : points) {
            const double g = 1.0 / (pt.x + p[1]);
            gy += g * pt.y;
            gg += g * g;
        }
        p[0] = gy / gg;
        out.method = "pole_free_start+gauss_newton";
    }
    out.iterations = gauss_newton(points, f, grad, p,
                                  [&](const double* q) { return q[0] > 0.0 && x_min + q[1] > 0.0; },
                                  "hyperbola");
    out.params = {p[0], p[1]};
    out.rss = rss_of(points, f, p);
    out.r2 = r_squared(points, out.rss);
    return out;
}

}  // namespace cohesion
