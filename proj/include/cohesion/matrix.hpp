#ifndef COHESION_MATRIX_HPP
#define COHESION_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace cohesion {

/// Dense row-major square matrix.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
    std::span<const double> data() const { return data_; }

    /// max |m_ij - m_ji|
    double asymmetry() const;

    std::vector<double> apply(std::span<const double> x) const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix transposed() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace cohesion

#endif
