#pragma once

#include <string>
#include <vector>

#include "funmv/sparse_matrix.hpp"

namespace funmv {

/// Negated 5-point Laplacian on a k-by-k interior grid: n = k^2, diagonal
/// -4, grid neighbors +1. Symmetric negative definite, so the wave
/// operator is y'' = A y with A = -L.
SparseMatrix<double> poisson_grid(index_t k);

/// Upper triangular, diagonal -1, every strictly upper entry -c.
SparseMatrix<double> triw_neg(index_t n, double c);

/// diag(1, 2, ..., n).
SparseMatrix<double> diag_range(index_t n);

/// b vectors used by the benchmark cases.
std::vector<double> b_cos(index_t n);     // [cos 1, ..., cos n]
std::vector<double> b_ones(index_t n);    // [1, ..., 1]
std::vector<double> b_e1_en(index_t n);   // [1, 0, ..., 0, 1]

/// Generator dispatch by name for the CLI: "poisson:k", "triw:n:c",
/// "diag:n". Throws input_error on an unknown name.
SparseMatrix<double> make_generator(const std::string& descr);
std::vector<double> make_b_vector(const std::string& name, index_t n);

} // namespace funmv
