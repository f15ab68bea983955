#include "cohesion/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cohesion/error.hpp"

namespace cohesion {

double Matrix::asymmetry() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
    return worst;
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        const double* r = data_.data() + i * n_;
        for (std::size_t j = 0; j < n_; ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

std::vector<double> SymmetricEigen::vector(std::size_t k) const {
    std::vector<double> v(vectors.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
    return v;
}

namespace {

// Householder reduction to tridiagonal form. On return V holds the
// accumulated orthogonal transform, d the diagonal and e the subdiagonal
// (e[0] unused).
void tridiagonalize(Matrix& V, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = V.size();
    for (std::size_t j = 0; j < n; ++j) d[j] = V(n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
                V(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                V(j, i) = f;
                g = e[j] + V(j, j) * f;
                for (std::size_t k = j + 1; k <= i - 1; ++k) {
                    g += V(k, j) * d[k];
                    e[k] += V(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k <= i - 1; ++k) V(k, j) -= (f * e[k] + g * d[k]);
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        V(n - 1, i) = V(i, i);
        V(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
                for (std::size_t k = 0; k <= i; ++k) V(k, j) -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = V(n - 1, j);
        V(n - 1, j) = 0.0;
    }
    V(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e), rotating V alongside.
void ql_iterate(Matrix& V, std::vector<double>& d, std::vector<double>& e, bool want_vectors) {
    const std::size_t n = V.size();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0;
    double tst1 = 0.0;
    const double eps = std::ldexp(1.0, -52);
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 60) {
                    throw Error(ErrorCode::convergence,
                                "symmetric QL iteration did not converge for eigenvalue " +
                                    std::to_string(l));
                }
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if (want_vectors) {
                        for (std::size_t k = 0; k < n; ++k) {
                            h = V(k, i + 1);
                            V(k, i + 1) = s * V(k, i) + c * h;
                            V(k, i) = c * V(k, i) - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

}  // namespace

SymmetricEigen eigen_symmetric(const Matrix& m, bool want_vectors) {
    const std::size_t n = m.size();
    if (m.asymmetry() > 1e-10) {
        throw DomainError(
            "eigen_symmetric needs a symmetric matrix; route non-symmetric Laplacians through "
            "their symmetric similarity transform");
    }
    SymmetricEigen out;
    if (n == 0) return out;

    Matrix V = m;
    std::vector<double> d(n), e(n);
    if (n == 1) {
        out.values = {m(0, 0)};
        out.vectors = Matrix::identity(1);
        return out;
    }
    tridiagonalize(V, d, e);
    ql_iterate(V, d, e, want_vectors);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = d[order[k]];
    if (want_vectors) {
        out.vectors = Matrix(n);
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t src = order[k];
            std::size_t arg = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (std::abs(V(i, src)) > std::abs(V(arg, src)) + 1e-12) arg = i;
            const double sign = V(arg, src) < 0 ? -1.0 : 1.0;
            for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * V(i, src);
        }
    }
    return out;
}

}  // namespace cohesion
