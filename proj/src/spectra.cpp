#include "cohesion/spectra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cohesion/error.hpp"
#include "cohesion/metrics.hpp"

namespace cohesion {

const char* to_string(LaplacianKind kind) {
    switch (kind) {
        case LaplacianKind::binary: return "binary";
        case LaplacianKind::row_normalized: return "rownorm";
        case LaplacianKind::sym_normalized: return "symnorm";
    }
    return "?";
}

LaplacianKind parse_laplacian_kind(std::string_view name) {
    if (name == "binary") return LaplacianKind::binary;
    if (name == "rownorm" || name == "row_normalized") return LaplacianKind::row_normalized;
    if (name == "symnorm" || name == "sym_normalized") return LaplacianKind::sym_normalized;
    throw DomainError("unknown Laplacian kind `" + std::string(name) + "`");
}

namespace {

std::vector<double> strengths(const Graph& g) {
    std::vector<double> d(g.node_count());
    for (Node u = 0; u < g.node_count(); ++u) d[u] = g.strength(u);
    return d;
}

void require_no_isolated(const std::vector<double>& d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] <= 0.0) {
            throw DomainError("node " + std::to_string(i) +
                              " has no ties; normalized Laplacians need degree >= 1");
        }
}

Matrix build_laplacian(const Graph& sym, LaplacianKind kind) {
    const std::size_t n = sym.node_count();
    const auto d = strengths(sym);
    Matrix L(n);
    if (kind == LaplacianKind::binary) {
        for (Node u = 0; u < n; ++u) {
            L(u, u) = d[u];
            for (const auto& nb : sym.neighbors(u)) L(u, nb.node) = -nb.weight;
        }
        return L;
    }
    require_no_isolated(d);
    for (Node u = 0; u < n; ++u) {
        L(u, u) = 1.0;
        for (const auto& nb : sym.neighbors(u)) {
            L(u, nb.node) = kind == LaplacianKind::row_normalized
                                ? -nb.weight / d[u]
                                : -nb.weight / std::sqrt(d[u] * d[nb.node]);
        }
    }
    return L;
}

std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace

Matrix laplacian(const Graph& g, LaplacianKind kind) { return build_laplacian(g.undirected(), kind); }

Spectrum laplacian_spectrum(const Graph& g, LaplacianKind kind) {
    const Graph sym = g.undirected();
    const LaplacianKind solve_kind =
        kind == LaplacianKind::row_normalized ? LaplacianKind::sym_normalized : kind;
    auto eig = eigen_symmetric(build_laplacian(sym, solve_kind));
    Spectrum s{kind, std::move(eig.values), std::move(eig.vectors)};
    if (kind == LaplacianKind::row_normalized) {
        const auto d = strengths(sym);
        const std::size_t n = d.size();
        for (std::size_t k = 0; k < n; ++k) {
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                s.vectors(i, k) /= std::sqrt(d[i]);
                norm += s.vectors(i, k) * s.vectors(i, k);
            }
            norm = std::sqrt(norm);
            for (std::size_t i = 0; i < n; ++i) s.vectors(i, k) /= norm;
        }
    }
    return s;
}

double algebraic_connectivity(const Graph& g, LaplacianKind kind) {
    const Graph sym = g.undirected();
    if (sym.node_count() < 2) throw DomainError("algebraic connectivity needs at least 2 nodes");
    if (kind != LaplacianKind::binary) require_no_isolated(strengths(sym));
    if (!is_connected(sym)) return 0.0;
    const LaplacianKind solve_kind =
        kind == LaplacianKind::row_normalized ? LaplacianKind::sym_normalized : kind;
    return eigen_symmetric(build_laplacian(sym, solve_kind), false).values[1];
}

std::size_t zero_eigenvalue_multiplicity(std::span<const double> values) {
    if (values.empty()) return 0;
    const double scale = std::max(std::abs(values.back()), 1.0);
    return static_cast<std::size_t>(std::count_if(
        values.begin(), values.end(), [&](double x) { return std::abs(x) <= 1e-8 * scale; }));
}

BoundReport bound_report(const Graph& g) {
    const Graph sym = g.undirected();
    const std::size_t n = sym.node_count();
    if (n < 2) throw DomainError("bound report needs at least 2 nodes");
    if (!is_connected(sym)) throw DomainError("bound report needs a connected graph");

    constexpr double slack = 1e-9;
    BoundReport r;
    r.n = n;
    r.lambda2 = algebraic_connectivity(sym, LaplacianKind::binary);
    const auto dist = distance_summary(sym);
    r.mean_distance = dist.mean_distance;
    r.diameter = dist.diameter;

    const double nd = static_cast<double>(n);
    r.mean_distance_bound.value = 2.0 / ((nd - 1.0) * dist.mean_distance - 0.5 * (nd - 2.0));
    r.mean_distance_bound.satisfied = r.lambda2 >= r.mean_distance_bound.value - slack;
    r.diameter_bound.value = 4.0 / (nd * static_cast<double>(dist.diameter));
    r.diameter_bound.satisfied = r.lambda2 >= r.diameter_bound.value - slack;

    r.k_min = sym.min_degree();
    r.complete = sym.edge_count() == n * (n - 1) / 2;
    r.kappa = vertex_connectivity(sym);
    if (!r.complete) {
        r.lambda2_le_kappa = r.lambda2 <= static_cast<double>(r.kappa) + slack;
        r.kappa_le_kmin = r.kappa <= r.k_min;
    }
    return r;
}

TradeoffMetrics tradeoff_metrics(std::span<const double> eigenvalues, double t) {
    if (!(t > 0.0)) throw DomainError("trade-off metrics need t > 0");
    const std::size_t n = eigenvalues.size();
    if (n == 0) throw DomainError("empty spectrum");

    TradeoffMetrics m;
    m.t = t;
    // lambda_1 = 0 for a Laplacian, so every weight is <= 1 and the sum >= 1.
    std::vector<double> w(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        w[k] = std::exp(-t * std::max(eigenvalues[k], 0.0));
        sum += w[k];
    }
    m.rho_eigenvalues.resize(n);
    double mean = 0.0, second = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = w[k] / sum;
        const double lam = std::max(eigenvalues[k], 0.0);
        m.rho_eigenvalues[k] = p;
        if (p > 0.0) m.entropy -= p * std::log(p);
        mean += p * lam;
        second += p * lam * lam;
    }
    m.Z = sum / static_cast<double>(n);
    const double logZ = std::log(m.Z);
    m.F = -logZ / t;
    m.Q = -t * std::max(second - mean * mean, 0.0);
    m.V = logZ / (t * t) + mean / t;
    if (std::abs(m.V) < 1e-12) {
        throw DomainError("eta is undefined: dF/dt vanishes at t=" + fmt(t));
    }
    m.eta = 1.0 - std::abs(m.Q) / m.V;
    return m;
}

TradeoffMetrics tradeoff_metrics(const Graph& g, LaplacianKind kind, double t) {
    if (!(t > 0.0)) throw DomainError("trade-off metrics need t > 0");
    if (!is_connected(g)) throw DomainError("trade-off metrics need a connected graph");
    const Graph sym = g.undirected();
    const LaplacianKind solve_kind =
        kind == LaplacianKind::row_normalized ? LaplacianKind::sym_normalized : kind;
    const auto eig = eigen_symmetric(build_laplacian(sym, solve_kind), false);
    return tradeoff_metrics(eig.values, t);
}

std::string matrix_csv(const Matrix& m, LaplacianKind kind) {
    std::ostringstream os;
    os << "# kind=" << to_string(kind) << " n=" << m.size() << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) os << (j ? "," : "") << fmt(m(i, j));
        os << '\n';
    }
    return os.str();
}

std::string spectrum_csv(const Spectrum& s) {
    const std::size_t n = s.values.size();
    std::ostringstream os;
    os << "# kind=" << to_string(s.kind) << " n=" << n << '\n';
    os << "k,lambda";
    for (std::size_t i = 0; i < n; ++i) os << ",v_" << i;
    os << '\n';
    for (std::size_t k = 0; k < n; ++k) {
        os << k << ',' << fmt(s.values[k]);
        for (std::size_t i = 0; i < n; ++i) os << ',' << fmt(s.vectors(i, k));
        os << '\n';
    }
    return os.str();
}

}  // namespace cohesion
