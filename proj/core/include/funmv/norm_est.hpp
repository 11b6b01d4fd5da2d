#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "funmv/sparse_matrix.hpp"

namespace funmv {

/// Implicit A^e, applied column-block at a time. e = sigma*k is always a
/// positive integer because k is even.
template <class T>
struct PowerOperator {
    const SparseMatrix<T>& A;
    int exponent; // >= 1

    DenseBlock<T> apply(DenseBlock<T> b, MatvecCounter& counter) const {
        for (int i = 0; i < exponent; ++i) b = matmat(A, b, counter);
        return b;
    }
    DenseBlock<T> apply_adjoint(DenseBlock<T> b, MatvecCounter& counter) const {
        for (int i = 0; i < exponent; ++i) b = matmat_adjoint(A, b, counter);
        return b;
    }
};

struct NormEstConfig {
    int columns = 2;          // block width of the estimator
    int max_sweeps = 5;
    unsigned seed = 0;        // drives the random +-1 start columns
    index_t exact_threshold = 128; // n at or below: exact norm via identity block
};

namespace detail {

template <class T>
T unit_sign(const T& x) {
    if constexpr (is_complex_v<T>) {
        const auto a = std::abs(x);
        return a == 0 ? T(1) : x / a;
    } else {
        return x >= 0 ? T(1) : T(-1);
    }
}

} // namespace detail

/// Lower-bound estimate of ||A^e||_1 (block 1-norm estimation over the
/// implicit operator). For n <= exact_threshold the norm is computed
/// exactly by applying the operator to the identity block, still through
/// the counter. Overflow reports +inf.
template <class T>
double est_one_norm_power(const PowerOperator<T>& op, const NormEstConfig& cfg, MatvecCounter& counter) {
    using R = real_t<T>;
    const index_t n = op.A.n;
    if (n == 0) return 0.0;

    if (n <= cfg.exact_threshold) {
        DenseBlock<T> id(n, n);
        for (index_t i = 0; i < n; ++i) id(i, i) = T(1);
        DenseBlock<T> y = op.apply(std::move(id), counter);
        double best = 0.0;
        for (index_t j = 0; j < n; ++j) {
            R s = 0;
            for (index_t i = 0; i < n; ++i) s += std::abs(y(i, j));
            best = std::max(best, static_cast<double>(s));
        }
        return std::isfinite(best) ? best : std::numeric_limits<double>::infinity();
    }

    const index_t ell = std::max<index_t>(1, cfg.columns);
    std::mt19937 rng(cfg.seed);

    // start block: ones column plus random +-1 columns, all of unit 1-norm
    DenseBlock<T> x(n, ell);
    for (index_t i = 0; i < n; ++i) x(i, 0) = T(R(1) / static_cast<R>(n));
    for (index_t j = 1; j < ell; ++j)
        for (index_t i = 0; i < n; ++i)
            x(i, j) = T((rng() & 1u) ? R(1) / static_cast<R>(n) : R(-1) / static_cast<R>(n));

    double est = 0.0;
    std::set<index_t> used;
    for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
        DenseBlock<T> y = op.apply(x, counter);
        double cur = 0.0;
        for (index_t j = 0; j < ell; ++j) {
            R s = 0;
            for (index_t i = 0; i < n; ++i) s += std::abs(y(i, j));
            cur = std::max(cur, static_cast<double>(s));
        }
        if (!std::isfinite(cur)) return std::numeric_limits<double>::infinity();
        if (sweep > 1 && cur <= est) break; // estimate stopped increasing
        est = std::max(est, cur);
        if (sweep == cfg.max_sweeps) break;

        DenseBlock<T> s(n, ell);
        for (std::size_t i = 0; i < s.data.size(); ++i) s.data[i] = detail::unit_sign(y.data[i]);
        DenseBlock<T> z = op.apply_adjoint(std::move(s), counter);

        // row scores; next probes are unit vectors at the largest unseen
        // scores, ties broken toward the lowest index
        std::vector<std::pair<double, index_t>> h(static_cast<std::size_t>(n));
        for (index_t i = 0; i < n; ++i) {
            R m = 0;
            for (index_t j = 0; j < ell; ++j) m = std::max(m, std::abs(z(i, j)));
            h[static_cast<std::size_t>(i)] = {static_cast<double>(m), i};
        }
        std::sort(h.begin(), h.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        x = DenseBlock<T>(n, ell);
        index_t placed = 0;
        for (const auto& [score, idx] : h) {
            (void)score;
            if (used.count(idx)) continue;
            x(idx, placed) = T(1);
            used.insert(idx);
            if (++placed == ell) break;
        }
        if (placed == 0) break; // every candidate already probed
        if (placed < ell)
            for (index_t j = placed; j < ell; ++j) x(h[static_cast<std::size_t>(j)].second % n, j) = T(1);
    }
    return est;
}

/// d_k = ||A^{sigma k}||_1^{1/k} for even k, and alpha_p = max(d_2p, d_2p+2).
struct AlphaSequence {
    double sigma = 1.0;
    std::map<int, double> d;      // even k -> d_k
    std::map<int, double> alphas; // p -> alpha_p, p = 2..pmax
    long long cost = 0;           // matvecs consumed by estimation
};

template <class T>
AlphaSequence alpha_sequence(const SparseMatrix<T>& a, double sigma, int pmax, const NormEstConfig& cfg,
                             MatvecCounter& counter) {
    if (pmax < 2) throw input_error("alpha_sequence: pmax must be >= 2");
    AlphaSequence seq;
    seq.sigma = sigma;
    const long long before = counter.count;
    for (int p = 2; p <= pmax + 1; ++p) {
        const int k = 2 * p;
        const int e = static_cast<int>(sigma * k + 0.5);
        const double est = est_one_norm_power(PowerOperator<T>{a, e}, cfg, counter);
        seq.d[k] = std::pow(est, 1.0 / k);
    }
    for (int p = 2; p <= pmax; ++p) seq.alphas[p] = std::max(seq.d.at(2 * p), seq.d.at(2 * p + 2));
    seq.cost = counter.count - before;
    return seq;
}

} // namespace funmv
