#ifndef COHESION_EIGEN_HPP
#define COHESION_EIGEN_HPP

#include <vector>

#include "cohesion/matrix.hpp"

namespace cohesion {

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k is the unit eigenvector of values[k]

    std::vector<double> vector(std::size_t k) const;
};

/// Full eigendecomposition of a real symmetric matrix by Householder
/// tridiagonalization followed by implicit-shift QL iteration.
///
/// Eigenvectors are orthonormal and sign-normalized so that the entry of
/// largest magnitude (first one on ties) is positive. Throws DomainError when
/// the input is not symmetric to within 1e-10, and ConvergenceError-coded
/// Error when QL fails to converge in 60 sweeps per eigenvalue.
SymmetricEigen eigen_symmetric(const Matrix& m, bool want_vectors = true);

}  // namespace cohesion

#endif
