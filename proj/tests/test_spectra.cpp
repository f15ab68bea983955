#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cohesion/eigen.hpp"
#include "cohesion/error.hpp"
#include "cohesion/metrics.hpp"
#include "cohesion/spectra.hpp"
#include "oracles.hpp"

using namespace cohesion;
using std::numbers::pi;

namespace {

Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (Node i = 0; i < n; ++i)
        for (Node j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph cycle_graph(std::size_t n) {
    Graph g(n);
    for (Node i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph path_graph(std::size_t n) {
    Graph g(n);
    for (Node i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph star_graph(std::size_t n) {
    Graph g(n);
    for (Node i = 1; i < n; ++i) g.add_edge(0, i);
    return g;
}

double residual(const Matrix& m, std::span<const double> v, double lambda) {
    auto mv = m.apply(v);
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(mv[i] - lambda * v[i]));
    return worst;
}

}  // namespace

TEST_CASE("laplacian construction") {
    Matrix k2 = laplacian(complete_graph(2), LaplacianKind::binary);
    CHECK(k2(0, 0) == 1.0);
    CHECK(k2(0, 1) == -1.0);
    CHECK(k2(1, 0) == -1.0);
    CHECK(k2(1, 1) == 1.0);

    Matrix c4 = laplacian(cycle_graph(4), LaplacianKind::row_normalized);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(c4(i, i) == 1.0);
        CHECK(c4(i, (i + 1) % 4) == -0.5);
        CHECK(c4(i, (i + 2) % 4) == 0.0);
    }

    Rng rng(3);
    Graph g = oracle::connected_gnp(15, 0.3, rng);
    for (auto kind : {LaplacianKind::binary, LaplacianKind::row_normalized}) {
        const std::vector<double> ones(15, 1.0);
        for (double x : laplacian(g, kind).apply(ones)) CHECK(std::abs(x) < 1e-12);
    }
    Graph iso(3);
    iso.add_edge(0, 1);
    CHECK_THROWS_AS(laplacian(iso, LaplacianKind::row_normalized), DomainError);
    CHECK_THROWS_AS(laplacian(iso, LaplacianKind::sym_normalized), DomainError);
    CHECK_NOTHROW(laplacian(iso, LaplacianKind::binary));
}

TEST_CASE("closed-form spectra") {
    for (std::size_t n = 3; n <= 30; ++n) {
        const double dn = static_cast<double>(n);
        CHECK(std::abs(algebraic_connectivity(complete_graph(n)) - dn) < 1e-8);
        CHECK(std::abs(algebraic_connectivity(complete_graph(n), LaplacianKind::row_normalized) -
                       dn / (dn - 1)) < 1e-8);
        CHECK(std::abs(algebraic_connectivity(cycle_graph(n)) - 2 * (1 - std::cos(2 * pi / dn))) < 1e-8);
        CHECK(std::abs(algebraic_connectivity(path_graph(n)) - 2 * (1 - std::cos(pi / dn))) < 1e-8);
        CHECK(std::abs(algebraic_connectivity(star_graph(n)) - 1.0) < 1e-8);
        CHECK(std::abs(algebraic_connectivity(cycle_graph(n), LaplacianKind::row_normalized) -
                       (1 - std::cos(2 * pi / dn))) < 1e-8);
    }
    auto k4 = laplacian_spectrum(complete_graph(4), LaplacianKind::binary);
    CHECK(k4.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    for (int k = 1; k < 4; ++k) CHECK(k4.values[k] == doctest::Approx(4.0));
    CHECK(algebraic_connectivity(cycle_graph(6)) == doctest::Approx(1.0));
}

TEST_CASE("eigensolver agrees with Jacobi and is orthonormal") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng.below(30);
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform() * 2 - 1;
        auto ours = eigen_symmetric(m);
        auto ref = oracle::jacobi(m);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(ours.values[k] - ref.values[k]) < 1e-9);
            CHECK(residual(m, ours.vector(k), ours.values[k]) < 1e-8);
        }
        Matrix gram = ours.vectors.transposed() * ours.vectors;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)) < 1e-8);
    }
}

TEST_CASE("eigensolver rejects asymmetric input and fixes signs") {
    Matrix a(2);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(eigen_symmetric(a), DomainError);

    auto s = eigen_symmetric(laplacian(path_graph(5), LaplacianKind::binary));
    for (std::size_t k = 0; k < 5; ++k) {
        auto v = s.vector(k);
        auto big = std::max_element(v.begin(), v.end(),
                                    [](double x, double y) { return std::abs(x) < std::abs(y) - 1e-12; });
        CHECK(*big > 0);
    }
}

TEST_CASE("row-normalized eigenpairs via similarity") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 5 + rng.below(26);
        Graph g = oracle::connected_gnp(n, 0.15 + 0.4 * rng.uniform(), rng);
        auto s = laplacian_spectrum(g, LaplacianKind::row_normalized);
        Matrix rn = laplacian(g, LaplacianKind::row_normalized);
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = s.vectors(i, k);
            CHECK(residual(rn, v, s.values[k]) < 1e-8);
        }
        CHECK(s.lambda2() == doctest::Approx(algebraic_connectivity(g, LaplacianKind::sym_normalized)));
    }
}

TEST_CASE("disconnected graphs") {
    Graph two(8);
    for (Node i = 0; i < 4; ++i)
        for (Node j = i + 1; j < 4; ++j) two.add_edge(i, j), two.add_edge(i + 4, j + 4);
    CHECK(algebraic_connectivity(two) == 0.0);
    CHECK(algebraic_connectivity(two, LaplacianKind::row_normalized) == 0.0);
    CHECK_THROWS_AS(bound_report(two), DomainError);
    CHECK_THROWS_AS(algebraic_connectivity(Graph(1)), DomainError);
}

TEST_CASE("zero multiplicity equals component count") {
    Rng rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng.below(25);
        Graph g = oracle::gnp(n, 0.3 * rng.uniform(), rng);
        auto s = laplacian_spectrum(g, LaplacianKind::binary);
        CHECK(zero_eigenvalue_multiplicity(s.values) == connected_components(g).count);
    }
}

TEST_CASE("adding an edge never decreases lambda2") {
    Rng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 4 + rng.below(9);
        Graph g = oracle::connected_gnp(n, 0.3, rng);
        const double base = algebraic_connectivity(g);
        for (Node u = 0; u < n; ++u)
            for (Node v = u + 1; v < n; ++v) {
                if (g.has_edge(u, v)) continue;
                Graph h = g;
                h.add_edge(u, v);
                CHECK(algebraic_connectivity(h) >= base - 1e-10);
            }
    }
}

TEST_CASE("bound report") {
    auto c6 = bound_report(cycle_graph(6));
    CHECK(c6.lambda2 == doctest::Approx(1.0));
    CHECK(c6.mean_distance_bound.value == doctest::Approx(2.0 / 7.0));
    CHECK(c6.diameter_bound.value == doctest::Approx(4.0 / 18.0));
    CHECK(c6.kappa == 2);
    CHECK(c6.k_min == 2);
    CHECK(c6.all_satisfied());

    auto k5 = bound_report(complete_graph(5));
    CHECK(k5.complete);
    CHECK(k5.mean_distance == 1.0);
    CHECK(k5.all_satisfied());

    Rng rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = oracle::connected_gnp(10 + rng.below(21), 0.3, rng);
        CHECK(bound_report(g).all_satisfied());
    }
}

TEST_CASE("trade-off metrics limits") {
    Rng rng(41);
    Graph g = oracle::connected_gnp(12, 0.4, rng);
    auto early = tradeoff_metrics(g, LaplacianKind::binary, 1e-9);
    CHECK(early.entropy == doctest::Approx(std::log(12.0)).epsilon(1e-6));
    auto late = tradeoff_metrics(g, LaplacianKind::binary, 200.0);
    CHECK(late.entropy < 1e-6);
    CHECK(late.rho_eigenvalues[0] == doctest::Approx(1.0));

    for (double t : {0.1, 1.0, 10.0}) {
        auto m = tradeoff_metrics(g, LaplacianKind::binary, t);
        double sum = 0.0;
        for (double p : m.rho_eigenvalues) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(std::abs(sum - 1.0) < 1e-10);
        CHECK(m.Z > 0.0);
        CHECK(m.entropy >= 0.0);
        CHECK(m.entropy <= std::log(12.0) + 1e-12);
        CHECK(m.eta == doctest::Approx(1.0 - std::abs(m.Q) / m.V));
    }
    CHECK_THROWS_AS(tradeoff_metrics(g, LaplacianKind::binary, 0.0), DomainError);
}

TEST_CASE("trade-off derivatives match central differences") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = oracle::connected_gnp(6 + rng.below(20), 0.35, rng);
        const auto values = laplacian_spectrum(g, LaplacianKind::binary).values;
        for (double t : {0.1, 1.0, 10.0}) {
            const double h = 1e-5 * t;
            auto m = tradeoff_metrics(values, t);
            auto lo = tradeoff_metrics(values, t - h);
            auto hi = tradeoff_metrics(values, t + h);
            CHECK(std::abs(m.Q - (hi.entropy - lo.entropy) / (2 * h)) < 1e-6);
            CHECK(std::abs(m.V - (hi.F - lo.F) / (2 * h)) < 1e-6);
        }
    }
}

TEST_CASE("csv export") {
    auto s = laplacian_spectrum(complete_graph(2), LaplacianKind::binary);
    const std::string csv = spectrum_csv(s);
    CHECK(csv.rfind("# kind=binary n=2\nk,lambda,v_0,v_1\n", 0) == 0);
    CHECK(matrix_csv(laplacian(complete_graph(2), LaplacianKind::binary), LaplacianKind::binary) ==
          "# kind=binary n=2\n1,-1\n-1,1\n");
    CHECK(parse_laplacian_kind("rownorm") == LaplacianKind::row_normalized);
    CHECK_THROWS_AS(parse_laplacian_kind("weird"), DomainError);
}
