#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "funmv/types.hpp"

namespace funmv {

/// n x n0 dense block, column-major. Holds B and every working block of
/// the recurrences (T_k, U, V, Z, C, S).
template <class T>
struct DenseBlock {
    index_t n = 0;
    index_t n0 = 0;
    std::vector<T> data; // column-major, n*n0

    DenseBlock() = default;
    DenseBlock(index_t rows, index_t cols) : n(rows), n0(cols), data(static_cast<std::size_t>(rows * cols), T(0)) {}

    T& operator()(index_t i, index_t j) { return data[static_cast<std::size_t>(j * n + i)]; }
    const T& operator()(index_t i, index_t j) const { return data[static_cast<std::size_t>(j * n + i)]; }

    T* col(index_t j) { return data.data() + j * n; }
    const T* col(index_t j) const { return data.data() + j * n; }

    static DenseBlock ones(index_t rows, index_t cols = 1) {
        DenseBlock b(rows, cols);
        std::fill(b.data.begin(), b.data.end(), T(1));
        return b;
    }

    static DenseBlock from_column(const std::vector<T>& v) {
        DenseBlock b(static_cast<index_t>(v.size()), 1);
        std::copy(v.begin(), v.end(), b.data.begin());
        return b;
    }

    std::vector<T> column(index_t j) const { return std::vector<T>(col(j), col(j) + n); }

    bool all_finite() const {
        for (const T& x : data)
            if (!std::isfinite(real_part(x)) || !std::isfinite(imag_part(x))) return false;
        return true;
    }
};

/// Max column abs sum.
template <class T>
real_t<T> one_norm_block(const DenseBlock<T>& b) {
    real_t<T> best = 0;
    for (index_t j = 0; j < b.n0; ++j) {
        real_t<T> s = 0;
        const T* c = b.col(j);
        for (index_t i = 0; i < b.n; ++i) s += std::abs(c[i]);
        best = std::max(best, s);
    }
    return best;
}

/// Max row abs sum.
template <class T>
real_t<T> inf_norm(const DenseBlock<T>& b) {
    std::vector<real_t<T>> rows(static_cast<std::size_t>(b.n), 0);
    for (index_t j = 0; j < b.n0; ++j) {
        const T* c = b.col(j);
        for (index_t i = 0; i < b.n; ++i) rows[static_cast<std::size_t>(i)] += std::abs(c[i]);
    }
    real_t<T> best = 0;
    for (auto r : rows) best = std::max(best, r);
    return best;
}

template <class T>
void scale_inplace(DenseBlock<T>& b, T alpha) {
    for (T& x : b.data) x *= alpha;
}

/// y += alpha * x
template <class T>
void axpy(DenseBlock<T>& y, T alpha, const DenseBlock<T>& x) {
    for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] += alpha * x.data[i];
}

/// out = a*x + b*y
template <class T>
DenseBlock<T> lincomb(T a, const DenseBlock<T>& x, T b, const DenseBlock<T>& y) {
    DenseBlock<T> out(x.n, x.n0);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = a * x.data[i] + b * y.data[i];
    return out;
}

template <class T>
DenseBlock<T> scaled(const DenseBlock<T>& x, T alpha) {
    DenseBlock<T> out = x;
    scale_inplace(out, alpha);
    return out;
}

template <class T>
DenseBlock<std::complex<real_t<T>>> promote_complex(const DenseBlock<T>& b) {
    DenseBlock<std::complex<real_t<T>>> out(b.n, b.n0);
    for (std::size_t i = 0; i < b.data.size(); ++i) out.data[i] = b.data[i];
    return out;
}

} // namespace funmv
