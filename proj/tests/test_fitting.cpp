#include "doctest.h"

#include <cmath>

#include "cohesion/error.hpp"
#include "cohesion/fitting.hpp"
#include "cohesion/random.hpp"

using namespace cohesion;

namespace {

const std::vector<Point> kColoring{{0.0083, 158}, {0.1050, 63},  {0.1974, 49},
                                   {0.3038, 29.5}, {0.3267, 27}, {0.3301, 20.5}};

}

TEST_CASE("noiseless power law is recovered by both methods") {
    std::vector<Point> pts;
    for (double x : {0.05, 0.1, 0.2, 0.4, 0.8, 1.3}) pts.push_back({x, 3.0 * std::pow(x, -0.5)});
    for (auto m : {PowerLawMethod::loglog_ols, PowerLawMethod::nls}) {
        auto fit = fit_power_law(pts, m);
        CHECK(std::abs(fit.param("a") - 3.0) < 1e-8);
        CHECK(std::abs(fit.param("b") - 0.5) < 1e-8);
        CHECK(fit.r2 == doctest::Approx(1.0));
    }
}

TEST_CASE("power law on the coloring data") {
    auto ols = fit_power_law(kColoring, PowerLawMethod::loglog_ols);
    auto nls = fit_power_law(kColoring, PowerLawMethod::nls);
    CHECK(ols.param("b") > 0);
    CHECK(nls.param("b") > 0);
    CHECK(nls.rss <= ols.rss);
    CHECK(nls.r2 <= 1.0);
}

TEST_CASE("nls never increases rss from its start") {
    Rng rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point> pts;
        const double a = 1 + 5 * rng.uniform(), b = 0.1 + rng.uniform();
        for (int i = 0; i < 8; ++i) {
            const double x = 0.05 + rng.uniform();
            pts.push_back({x, a * std::pow(x, -b) * (1 + 0.1 * (rng.uniform() - 0.5))});
        }
        CHECK(fit_power_law(pts, PowerLawMethod::nls).rss <=
              fit_power_law(pts, PowerLawMethod::loglog_ols).rss * (1 + 1e-12));
    }
}

TEST_CASE("power law scale consistency") {
    std::vector<Point> scaled;
    for (auto p : kColoring) scaled.push_back({p.x, 7.0 * p.y});
    auto base = fit_power_law(kColoring, PowerLawMethod::loglog_ols);
    auto fit = fit_power_law(scaled, PowerLawMethod::loglog_ols);
    CHECK(std::abs(fit.param("a") - 7.0 * base.param("a")) < 1e-10 * fit.param("a"));
    CHECK(std::abs(fit.param("b") - base.param("b")) < 1e-10);
}

TEST_CASE("fit preconditions") {
    const std::vector<Point> one{{1, 1}};
    CHECK_THROWS_AS(fit_power_law(one, PowerLawMethod::nls), DomainError);
    const std::vector<Point> neg{{1, 1}, {2, -1}, {3, 1}};
    CHECK_THROWS_AS(fit_power_law(neg, PowerLawMethod::loglog_ols), DomainError);
    CHECK_THROWS_AS(fit_hyperbola(neg), DomainError);
    const std::vector<Point> flat{{2, 1}, {2, 2}, {2, 3}};
    CHECK_THROWS_AS(fit_hyperbola(flat), DomainError);
    CHECK_THROWS_AS(fit_linear(flat), DomainError);
}

TEST_CASE("noiseless hyperbola is recovered") {
    std::vector<Point> pts;
    for (double x : {1.0, 1.4, 2.0, 2.7, 3.5, 5.0}) pts.push_back({x, 2.0 / (x + 0.3)});
    auto fit = fit_hyperbola(pts);
    CHECK(std::abs(fit.param("c1") - 2.0) < 1e-8);
    CHECK(std::abs(fit.param("c2") - 0.3) < 1e-8);
    CHECK(fit.predict(1.7) == doctest::Approx(2.0 / 2.0));
}

TEST_CASE("hyperbola refinement does not lose to its linearized start") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point> pts;
        for (int i = 0; i < 10; ++i) {
            const double x = 1 + 3 * rng.uniform();
            pts.push_back({x, 1.5 / (x - 0.2) * (1 + 0.2 * (rng.uniform() - 0.5))});
        }
        auto fit = fit_hyperbola(pts);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto p : pts) sx += p.x, sy += 1 / p.y, sxx += p.x * p.x, sxy += p.x / p.y;
        const double n = 10, slope = (n * sxy - sx * sy) / (n * sxx - sx * sx), icpt = (sy - slope * sx) / n;
        double lin = 0;
        for (auto p : pts) {
            const double r = p.y - (1 / slope) / (p.x + icpt / slope);
            lin += r * r;
        }
        CHECK(fit.rss <= lin * (1 + 1e-12));
        CHECK(fit.param("c1") > 0);
    }
}

TEST_CASE("linear fit") {
    const std::vector<Point> pts{{1, 3}, {2, 5}, {3, 7}, {4, 9}};
    auto fit = fit_linear(pts);
    CHECK(fit.param("alpha") == doctest::Approx(1.0));
    CHECK(fit.param("beta") == doctest::Approx(2.0));
    CHECK(fit.rss < 1e-20);
}
