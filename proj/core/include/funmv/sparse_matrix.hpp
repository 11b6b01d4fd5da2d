#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <vector>

#include "funmv/dense_block.hpp"
#include "funmv/types.hpp"

namespace funmv {

/// Square CSR matrix. Row-major sparse storage; the adjoint actions
/// needed by the norm estimator run a column-gather pass over the same
/// arrays instead of storing A*.
template <class T>
struct SparseMatrix {
    index_t n = 0;
    std::vector<index_t> row_ptr; // length n+1
    std::vector<index_t> col_idx;
    std::vector<T> values;

    index_t nnz() const { return static_cast<index_t>(values.size()); }

    /// Checks the CSR invariants; throws input_error on violation.
    void validate() const {
        if (row_ptr.size() != static_cast<std::size_t>(n + 1)) throw input_error("csr: row_ptr length must be n+1");
        if (row_ptr.front() != 0 || row_ptr.back() != nnz()) throw input_error("csr: row_ptr endpoints invalid");
        for (index_t i = 0; i < n; ++i) {
            if (row_ptr[i + 1] < row_ptr[i]) throw input_error("csr: row_ptr not nondecreasing");
            for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                if (col_idx[k] < 0 || col_idx[k] >= n) throw input_error("csr: column index out of range");
                if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1])
                    throw input_error("csr: duplicate or unsorted column in row " + std::to_string(i));
            }
        }
    }

    static SparseMatrix identity(index_t n) {
        SparseMatrix a;
        a.n = n;
        a.row_ptr.resize(n + 1);
        std::iota(a.row_ptr.begin(), a.row_ptr.end(), index_t(0));
        a.col_idx.resize(n);
        std::iota(a.col_idx.begin(), a.col_idx.end(), index_t(0));
        a.values.assign(n, T(1));
        return a;
    }

    static SparseMatrix diagonal(const std::vector<T>& d) {
        SparseMatrix a = identity(static_cast<index_t>(d.size()));
        a.values = d;
        return a;
    }

    static SparseMatrix from_triplets(index_t n, std::vector<std::tuple<index_t, index_t, T>> trip) {
        std::sort(trip.begin(), trip.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
        });
        SparseMatrix a;
        a.n = n;
        a.row_ptr.assign(n + 1, 0);
        a.col_idx.reserve(trip.size());
        a.values.reserve(trip.size());
        for (std::size_t k = 0; k < trip.size(); ++k) {
            auto [i, j, v] = trip[k];
            if (i < 0 || i >= n || j < 0 || j >= n) throw input_error("triplet index out of range");
            if (k > 0 && i == std::get<0>(trip[k - 1]) && j == std::get<1>(trip[k - 1]))
                throw input_error("duplicate entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            a.row_ptr[i + 1]++;
            a.col_idx.push_back(j);
            a.values.push_back(v);
        }
        for (index_t i = 0; i < n; ++i) a.row_ptr[i + 1] += a.row_ptr[i];
        return a;
    }

    SparseMatrix scaled(T alpha) const {
        SparseMatrix a = *this;
        for (T& v : a.values) v *= alpha;
        return a;
    }
};

template <class T>
SparseMatrix<std::complex<real_t<T>>> promote_complex(const SparseMatrix<T>& a) {
    SparseMatrix<std::complex<real_t<T>>> out;
    out.n = a.n;
    out.row_ptr = a.row_ptr;
    out.col_idx = a.col_idx;
    out.values.assign(a.values.begin(), a.values.end());
    return out;
}

/// Exact 1-norm: max column abs sum.
template <class T>
real_t<T> one_norm(const SparseMatrix<T>& a) {
    std::vector<real_t<T>> cols(static_cast<std::size_t>(a.n), 0);
    for (index_t k = 0; k < a.nnz(); ++k) cols[static_cast<std::size_t>(a.col_idx[k])] += std::abs(a.values[k]);
    real_t<T> best = 0;
    for (auto c : cols) best = std::max(best, c);
    return best;
}

/// trace(A)/n
template <class T>
T trace_mean(const SparseMatrix<T>& a) {
    T tr(0);
    for (index_t i = 0; i < a.n; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            if (a.col_idx[k] == i) tr += a.values[k];
    return tr / T(static_cast<real_t<T>>(a.n));
}

/// A - mu*I with the diagonal materialized in every row.
template <class T>
SparseMatrix<T> shift_diagonal(const SparseMatrix<T>& a, T mu) {
    std::vector<std::tuple<index_t, index_t, T>> trip;
    trip.reserve(a.values.size() + a.n);
    for (index_t i = 0; i < a.n; ++i) {
        bool seen_diag = false;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            T v = a.values[k];
            if (a.col_idx[k] == i) {
                v -= mu;
                seen_diag = true;
            }
            trip.emplace_back(i, a.col_idx[k], v);
        }
        if (!seen_diag) trip.emplace_back(i, i, -mu);
    }
    return SparseMatrix<T>::from_triplets(a.n, std::move(trip));
}

/// A*B, counting one matvec per column of B. Fixed accumulation order:
/// results do not depend on any schedule.
template <class T>
DenseBlock<T> matmat(const SparseMatrix<T>& a, const DenseBlock<T>& b, MatvecCounter& counter) {
    if (a.n != b.n) throw input_error("matmat: dimension mismatch");
    DenseBlock<T> out(b.n, b.n0);
    for (index_t j = 0; j < b.n0; ++j) {
        const T* x = b.col(j);
        T* y = out.col(j);
        for (index_t i = 0; i < a.n; ++i) {
            T sum(0);
            for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) sum += a.values[k] * x[a.col_idx[k]];
            y[i] = sum;
        }
    }
    counter.count += b.n0;
    return out;
}

/// A^* B via a column-gather pass over the CSR arrays.
template <class T>
DenseBlock<T> matmat_adjoint(const SparseMatrix<T>& a, const DenseBlock<T>& b, MatvecCounter& counter) {
    if (a.n != b.n) throw input_error("matmat_adjoint: dimension mismatch");
    DenseBlock<T> out(b.n, b.n0);
    for (index_t i = 0; i < a.n; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const T v = conj_of(a.values[k]);
            const index_t j = a.col_idx[k];
            for (index_t c = 0; c < b.n0; ++c) out(j, c) += v * b(i, c);
        }
    }
    counter.count += b.n0;
    return out;
}

} // namespace funmv
