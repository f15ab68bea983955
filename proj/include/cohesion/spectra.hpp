#ifndef COHESION_SPECTRA_HPP
#define COHESION_SPECTRA_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohesion/eigen.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/matrix.hpp"

namespace cohesion {

enum class LaplacianKind {
    binary,          // L = D - A
    row_normalized,  // D - W, w_ij = a_ij / sum_j a_ij (so D = I)
    sym_normalized,  // D^-1/2 (D - A) D^-1/2
};

const char* to_string(LaplacianKind kind);
/// Accepts "binary", "rownorm"/"row_normalized", "symnorm"/"sym_normalized".
LaplacianKind parse_laplacian_kind(std::string_view name);

/// Laplacian of the symmetric view of g. The row-normalized variant is not
/// symmetric for irregular graphs; it is returned for inspection and for
/// stepped integration, never handed to the symmetric eigensolver.
Matrix laplacian(const Graph& g, LaplacianKind kind);

struct Spectrum {
    LaplacianKind kind = LaplacianKind::binary;
    std::vector<double> values;  // ascending
    /// Column k is a unit right eigenvector of the requested Laplacian. For
    /// row_normalized these are D^-1/2 u_k rescaled, so they are not mutually
    /// orthogonal in the Euclidean sense.
    Matrix vectors;

    double lambda2() const { return values.size() > 1 ? values[1] : 0.0; }
};

/// Eigenpairs of the chosen Laplacian. row_normalized goes through the
/// symmetric L_nor (same spectrum by similarity).
Spectrum laplacian_spectrum(const Graph& g, LaplacianKind kind);

/// Second-smallest Laplacian eigenvalue; exactly 0 for disconnected graphs.
double algebraic_connectivity(const Graph& g, LaplacianKind kind = LaplacianKind::binary);

/// Eigenvalues within 1e-8 (relative to the largest) of zero.
std::size_t zero_eigenvalue_multiplicity(std::span<const double> ascending_values);

struct BoundCheck {
    double value = 0.0;
    bool satisfied = false;
};

/// lambda2 of the binary Laplacian against its distance and cut bounds.
struct BoundReport {
    std::size_t n = 0;
    double lambda2 = 0.0;
    double mean_distance = 0.0;
    std::size_t diameter = 0;
    BoundCheck mean_distance_bound;  // lambda2 >= 2 / ((n-1) Dmean - (n-2)/2)
    BoundCheck diameter_bound;       // lambda2 >= 4 / (n Dmax)
    std::size_t kappa = 0;
    std::size_t k_min = 0;
    bool complete = false;           // cut comparisons are skipped when true
    bool lambda2_le_kappa = true;
    bool kappa_le_kmin = true;

    bool all_satisfied() const {
        return mean_distance_bound.satisfied && diameter_bound.satisfied && lambda2_le_kappa &&
               kappa_le_kmin;
    }
};

/// Throws DomainError for disconnected graphs.
BoundReport bound_report(const Graph& g);

/// Density-matrix quantities of the propagator exp(-L t), evaluated on the
/// spectrum. Q and V are time derivatives of the entropy and of F.
struct TradeoffMetrics {
    double t = 0.0;
    double Z = 0.0;        // Tr(exp(-L t)) / n
    double entropy = 0.0;  // von Neumann entropy of rho_t
    double F = 0.0;        // -log(Z) / t
    double Q = 0.0;        // d entropy / dt
    double V = 0.0;        // dF / dt
    double eta = 0.0;      // 1 - |Q| / V
    std::vector<double> rho_eigenvalues;
};

TradeoffMetrics tradeoff_metrics(const Graph& g, LaplacianKind kind, double t);
/// Same quantities from a precomputed ascending spectrum.
TradeoffMetrics tradeoff_metrics(std::span<const double> eigenvalues, double t);

/// CSV exports: first line `# kind=<kind> n=<n>`, then row-major data.
std::string matrix_csv(const Matrix& m, LaplacianKind kind);
/// One row per eigenpair: `k,lambda,v_0,...,v_{n-1}`.
std::string spectrum_csv(const Spectrum& s);

}  // namespace cohesion

#endif
