#pragma once

#include <cmath>
#include <optional>

#include "funmv/norm_est.hpp"
#include "funmv/theta.hpp"

namespace funmv {

enum class SelectPath { norm_bound, d2_bound, full_alpha, zero_matrix };

inline const char* to_string(SelectPath p) {
    switch (p) {
        case SelectPath::norm_bound: return "norm-bound";
        case SelectPath::d2_bound: return "d2-bound";
        case SelectPath::full_alpha: return "full-alpha";
        case SelectPath::zero_matrix: return "zero-matrix";
    }
    return "?";
}

struct ParamChoice {
    int m_star = 0;
    long long s = 1;
    long long theta_cost = 0; // matvecs spent on estimation
    SelectPath path = SelectPath::norm_bound;
};

struct SelectConfig {
    int mmax = 25;
    int pmax = 5;
    int ell = 2;
    unsigned seed = 0;
    index_t exact_threshold = 128;

    NormEstConfig norm_cfg() const { return NormEstConfig{ell, 5, seed, exact_threshold}; }
    void check() const {
        if (mmax < 1 || pmax < 2) throw input_error("select: need mmax >= 1, pmax >= 2");
        if (static_cast<long long>(pmax) * (pmax - 1) > mmax + 1)
            throw input_error("select: pmax(pmax-1) must be <= mmax+1");
    }
};

namespace detail {

/// argmin over m of m*ceil(alpha/theta_m); ties toward smaller m.
inline std::pair<int, long long> argmin_cost(double alpha, const ThetaTable& th) {
    int best_m = 1;
    long long best_c = -1;
    for (int m = 1; m <= th.mmax(); ++m) {
        const long long c = m * static_cast<long long>(std::ceil(alpha / th.at(m)));
        if (best_c < 0 || c < best_c) {
            best_c = c;
            best_m = m;
        }
    }
    return {best_m, best_c};
}

} // namespace detail

/// The S matrix of alpha_p / theta_m ratios, zero where the degree
/// constraint p(p-1)-1 <= m fails. Reusable across values of t because
/// alpha_p(t A^sigma) = |t| alpha_p(A^sigma).
struct SpmMatrix {
    double sigma = 1.0;
    double tol = 0;
    int mmax = 25;
    int pmax = 5;
    std::vector<double> entries; // (pmax-1) x mmax row-major, rows p = 2..pmax
    long long theta_cost = 0;

    double at(int p, int m) const {
        return entries.at(static_cast<std::size_t>((p - 2) * mmax + (m - 1)));
    }
    double& at(int p, int m) { return entries.at(static_cast<std::size_t>((p - 2) * mmax + (m - 1))); }
};

/// Code-path selection for m* and s, given the already t-scaled matrix.
template <class T>
ParamChoice select_parameters(const SparseMatrix<T>& a, double sigma, double tol, index_t n0, const SelectConfig& cfg,
                              MatvecCounter& counter) {
    cfg.check();
    const long long before = counter.count;
    const ThetaTable th = theta_table_for(tol, cfg.mmax);
    const double theta_max = th.at(cfg.mmax);
    const double norm_surrogate = std::pow(one_norm(a), sigma);
    const double budget = 2.0 * cfg.ell * cfg.pmax * (cfg.pmax + 3) / (static_cast<double>(n0) * cfg.mmax);

    ParamChoice out;
    if (norm_surrogate <= theta_max * (budget - 1.0)) {
        auto [m, c] = detail::argmin_cost(norm_surrogate, th);
        out.m_star = m;
        out.s = std::max<long long>(static_cast<long long>(std::ceil(norm_surrogate / th.at(m))), 1);
        out.path = SelectPath::norm_bound;
        out.theta_cost = counter.count - before;
        return out;
    }

    const auto overflow_fallback = [&]() {
        out.m_star = cfg.mmax;
        out.s = std::max<long long>(static_cast<long long>(std::ceil(norm_surrogate / theta_max)), 1);
        out.path = SelectPath::norm_bound;
        out.theta_cost = counter.count - before;
        return out;
    };

    if (sigma == 1.0) {
        const long long nu_before = counter.count;
        const double est = est_one_norm_power(PowerOperator<T>{a, 2}, cfg.norm_cfg(), counter);
        if (std::isinf(est)) return overflow_fallback();
        const double d2 = std::sqrt(est);
        const long long nu = counter.count - nu_before;
        if (d2 <= theta_max * (budget - static_cast<double>(nu) - 1.0)) {
            auto [m, c] = detail::argmin_cost(d2, th);
            out.m_star = m;
            out.s = std::max<long long>(static_cast<long long>(std::ceil(d2 / th.at(m))), 1);
            out.path = SelectPath::d2_bound;
            out.theta_cost = counter.count - before;
            return out;
        }
    }

    const AlphaSequence seq = alpha_sequence(a, sigma, cfg.pmax, cfg.norm_cfg(), counter);
    long long best_c = -1;
    int best_m = cfg.mmax;
    for (int p = 2; p <= cfg.pmax; ++p) {
        const double alpha = seq.alphas.at(p);
        if (std::isinf(alpha)) return overflow_fallback();
        for (int m = std::max(1, p * (p - 1) - 1); m <= cfg.mmax; ++m) {
            const long long c = m * static_cast<long long>(std::ceil(alpha / th.at(m)));
            if (best_c < 0 || c < best_c || (c == best_c && m < best_m)) {
                best_c = c;
                best_m = m;
            }
        }
    }
    out.m_star = best_m;
    out.s = std::max<long long>(best_c / best_m, 1);
    out.path = SelectPath::full_alpha;
    out.theta_cost = counter.count - before;
    return out;
}

template <class T>
SpmMatrix build_spm(const SparseMatrix<T>& a, double sigma, double tol, const SelectConfig& cfg,
                    MatvecCounter& counter) {
    cfg.check();
    const ThetaTable th = theta_table_for(tol, cfg.mmax);
    const long long before = counter.count;
    const AlphaSequence seq = alpha_sequence(a, sigma, cfg.pmax, cfg.norm_cfg(), counter);
    SpmMatrix s;
    s.sigma = sigma;
    s.tol = tol;
    s.mmax = cfg.mmax;
    s.pmax = cfg.pmax;
    s.entries.assign(static_cast<std::size_t>((cfg.pmax - 1) * cfg.mmax), 0.0);
    for (int p = 2; p <= cfg.pmax; ++p)
        for (int m = std::max(1, p * (p - 1) - 1); m <= cfg.mmax; ++m) s.at(p, m) = seq.alphas.at(p) / th.at(m);
    s.theta_cost = counter.count - before;
    return s;
}

/// m* and s for a new scalar multiplier, from the precomputed ratios:
/// the smallest nonzero element of ceil(|t| S) diag(1..mmax).
inline std::pair<int, long long> select_for_t(const SpmMatrix& s, double t_abs, bool* degenerate = nullptr) {
    if (degenerate) *degenerate = false;
    long long best_c = -1;
    int best_m = s.mmax;
    for (int p = 2; p <= s.pmax; ++p) {
        for (int m = 1; m <= s.mmax; ++m) {
            const double e = s.at(p, m);
            if (e == 0.0) continue;
            const long long c = m * static_cast<long long>(std::ceil(t_abs * e));
            if (c == 0) continue;
            if (best_c < 0 || c < best_c || (c == best_c && m < best_m)) {
                best_c = c;
                best_m = m;
            }
        }
    }
    if (best_c < 0) {
        if (degenerate) *degenerate = true;
        return {s.mmax, 1};
    }
    return {best_m, std::max<long long>(best_c / best_m, 1)};
}

} // namespace funmv
