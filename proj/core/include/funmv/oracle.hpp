#pragma once

#include <complex>

#include "funmv/dense_block.hpp"
#include "funmv/sparse_matrix.hpp"

namespace funmv::oracle {

/// Reference values of the (C, S) output pair for one option id. Test
/// support only: dense, slow, and entirely independent of the engine's
/// Taylor/Chebyshev code.
template <class T>
struct OracleResult {
    DenseBlock<T> C;
    DenseBlock<T> S;
};

/// Scalar function pair of option `id` evaluated at eigenvalue lambda:
/// (cos-like, sin-like) of t*lambda^sigma. Square roots of negative
/// eigenvalues are handled through the even-series identities, e.g.
/// cos(sqrt(x)) = cosh(sqrt(-x)) for x < 0, so only lambda enters.
std::pair<double, double> scalar_pair(int id, double t, double lambda);

/// Symmetric eigendecomposition path. A must be symmetric; n <= 16384.
OracleResult<double> symmetric_pair(int id, double t, const SparseMatrix<double>& a, const DenseBlock<double>& b);

/// General dense path: even/odd Taylor series of the squared argument in
/// compensated arithmetic, argument scaled until its norm is <= 1/4,
/// recovered by double-angle recurrences. n <= 512.
template <class T>
OracleResult<T> general_pair(int id, T t, const SparseMatrix<T>& a, const DenseBlock<T>& b);

/// Dense e^X via plain scaled Taylor summation and repeated squaring
/// (no Pade), returned as a column-major n x n block. n <= 512.
template <class T>
DenseBlock<T> dense_expm(const SparseMatrix<T>& a, T t);

/// Closed-form spectrum path for the negated 5-point Laplacian on a
/// k-by-k grid: eigenvalues -4 + 2cos(p pi/(k+1)) + 2cos(q pi/(k+1)),
/// eigenvectors products of sine modes. Exact to rounding; used for the
/// large Poisson benchmark where a dense eigendecomposition is too big.
OracleResult<double> poisson_pair(int id, double t, index_t k, const DenseBlock<double>& b);

} // namespace funmv::oracle
