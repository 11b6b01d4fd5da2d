#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "funmv/param_select.hpp"
#include "funmv/sparse_matrix.hpp"

namespace funmv {

/// One of the six output pairs. sigma selects f(tA) vs f(t sqrt(A)), k0
/// the trigonometric (alternating) vs hyperbolic series, shift whether
/// the trace shift is applied.
struct FunmvOption {
    int id = 1;
    double sigma = 1.0;
    int k0 = 1;
    bool shift = true;

    static FunmvOption from_id(int id) {
        switch (id) {
            case 1: return {1, 1.0, 1, true};  // cos(tA)B,        sin(tA)B
            case 2: return {2, 1.0, 0, true};  // cosh(tA)B,       sinh(tA)B
            case 3: return {3, 1.0, 1, false}; // cos(tA)B,        sinc(tA)B
            case 4: return {4, 1.0, 0, false}; // cosh(tA)B,       sinch(tA)B
            case 5: return {5, 0.5, 1, false}; // cos(t sqrtA)B,   sinc(t sqrtA)B
            case 6: return {6, 0.5, 0, false}; // cosh(t sqrtA)B,  sinch(t sqrtA)B
        }
        throw input_error("option id must be 1..6");
    }
};

enum class UndoMode { none, inside, outside };

inline const char* to_string(UndoMode u) {
    switch (u) {
        case UndoMode::none: return "none";
        case UndoMode::inside: return "inside";
        case UndoMode::outside: return "outside";
    }
    return "?";
}

enum class BreakNorm { inf, one };

struct FunmvConfig {
    SelectConfig select;
    bool early_stop = true;
    bool force_no_shift = false; // test hook: keep the option semantics but pin mu = 0
    BreakNorm break_norm = BreakNorm::inf;
    const SpmMatrix* spm = nullptr; // precomputed ratios; skips re-estimation
};

template <class T>
struct FunmvReport {
    DenseBlock<T> C;
    DenseBlock<T> S;
    long long matvecs = 0; // everything, estimation included
    int m_star = 0;
    long long s = 1;
    std::vector<int> m_i; // per-pass stop degrees
    T mu = T(0);
    UndoMode undo = UndoMode::none;
    SelectPath path = SelectPath::zero_matrix;
    long long theta_cost = 0;
    int option = 1;
};

namespace detail {

template <class T>
real_t<T> break_measure(const DenseBlock<T>& b, BreakNorm norm) {
    return norm == BreakNorm::inf ? inf_norm(b) : one_norm_block(b);
}

template <class T>
void require_finite(const T& x, const char* what) {
    if (!std::isfinite(real_part(x)) || !std::isfinite(imag_part(x)))
        throw numerical_error(std::string(what) + " overflowed");
}

} // namespace detail

/// Computes C and S for the chosen option: the actions of a
/// trigonometric or hyperbolic function pair of tA (or t sqrt(A), never
/// forming the square root), by scaled truncated-Taylor passes chained
/// through the Chebyshev recurrences.
template <class T>
FunmvReport<T> funmv(T t, const SparseMatrix<T>& A_in, const DenseBlock<T>& B, double tol, FunmvOption opt,
                     const FunmvConfig& cfg = {}, MatvecCounter* external = nullptr) {
    using R = real_t<T>;
    if (A_in.n != B.n) throw input_error("funmv: A and B dimension mismatch");

    MatvecCounter counter;
    FunmvReport<T> rep;
    rep.option = opt.id;

    T mu(0);
    SparseMatrix<T> shifted;
    const SparseMatrix<T>* A = &A_in;
    if (opt.shift && !cfg.force_no_shift) {
        mu = trace_mean(A_in);
        shifted = shift_diagonal(A_in, mu);
        A = &shifted;
    }
    rep.mu = mu;

    int m_star = 0;
    long long s = 1;
    if (std::abs(t) * one_norm(*A) == 0.0) {
        rep.path = SelectPath::zero_matrix;
    } else if (cfg.spm) {
        auto [m, sv] = select_for_t(*cfg.spm, static_cast<double>(std::abs(t)));
        m_star = m;
        s = sv;
        rep.path = SelectPath::full_alpha;
    } else {
        const T tpow = opt.sigma == 1.0 ? t : t * t; // t^(1/sigma)
        const ParamChoice choice = select_parameters(A->scaled(tpow), opt.sigma, tol, B.n0, cfg.select, counter);
        m_star = choice.m_star;
        s = choice.s;
        rep.path = choice.path;
        rep.theta_cost = choice.theta_cost;
    }
    rep.m_star = m_star;
    rep.s = s;

    // shift-undo placement: per scaled step when the scalar factors could
    // overflow at full size, once at the end otherwise
    const T tmu = t * mu;
    UndoMode undo = UndoMode::none;
    T phi1(0), phi2(0);
    const T sT = T(static_cast<R>(s));
    if (opt.id == 1 && imag_part(tmu) != 0) {
        phi1 = std::cos(tmu / sT);
        phi2 = std::sin(tmu / sT);
        undo = UndoMode::inside;
    } else if (opt.id == 1 && tmu != T(0)) {
        phi1 = std::cos(tmu);
        phi2 = std::sin(tmu);
        undo = UndoMode::outside;
    } else if (opt.id == 2 && real_part(tmu) != 0) {
        phi1 = std::cosh(tmu / sT);
        phi2 = std::sinh(tmu / sT);
        undo = UndoMode::inside;
    } else if (opt.id == 2 && imag_part(tmu) != 0) {
        phi1 = std::cosh(tmu);
        phi2 = std::sinh(tmu);
        undo = UndoMode::outside;
    }
    if (undo != UndoMode::none) {
        detail::require_finite(phi1, "shift-undo factor");
        detail::require_finite(phi2, "shift-undo factor");
    }
    rep.undo = undo;

    const T ts = t / sT;
    const T coeff = ts * ts;
    const T k0sign = opt.k0 ? T(-1) : T(1);

    // U seeds the second-kind sum: B/2 for odd s (the half T_0 term), 0
    // for even s
    DenseBlock<T> U = (s % 2 == 1) ? scaled(B, T(0.5)) : DenseBlock<T>(B.n, B.n0);
    DenseBlock<T> T0 = U, T1 = B, T2;

    for (long long i = 1; i <= s + 1; ++i) {
        const bool final_pass = (i == s + 1);
        if (final_pass) {
            scale_inplace(U, T(2)); // U_{s-1}
            T1 = U;
        }
        DenseBlock<T> V = T1;
        DenseBlock<T> Z;
        if (undo == UndoMode::inside) Z = T1;
        DenseBlock<T> Bk = T1;

        R c1 = detail::break_measure(Bk, cfg.break_norm);
        int m_stop = m_star;
        for (int k = 1; k <= m_star; ++k) {
            const int beta = 2 * k;
            const int gamma = final_pass ? beta + 1 : beta - 1;
            const R q = final_pass ? static_cast<R>(gamma) : R(1) / static_cast<R>(beta + 1);
            if (opt.sigma == 1.0) Bk = matmat(*A, Bk, counter);
            Bk = matmat(*A, Bk, counter);
            scale_inplace(Bk, coeff / T(static_cast<R>(beta) * static_cast<R>(gamma)));
            const R c2 = detail::break_measure(Bk, cfg.break_norm);
            if (!std::isfinite(c2))
                throw numerical_error("funmv: non-finite value in pass " + std::to_string(i) + ", term " +
                                      std::to_string(k));
            const T sign = (opt.k0 && (k & 1)) ? T(-1) : T(1);
            axpy(V, sign, Bk);
            if (undo == UndoMode::inside) axpy(Z, sign * T(q), Bk);
            if (cfg.early_stop && c1 + c2 <= tol * detail::break_measure(V, cfg.break_norm)) {
                m_stop = k;
                break;
            }
            c1 = c2;
        }
        rep.m_i.push_back(m_stop);

        if (undo == UndoMode::inside) {
            if (!final_pass) {
                DenseBlock<T> W = scaled(Z, k0sign * t * phi2 / sT);
                W = matmat(*A, W, counter);
                V = lincomb(phi1, V, T(1), W);
            } else {
                DenseBlock<T> W = scaled(V, t * phi1 / sT);
                W = matmat(*A, W, counter);
                V = lincomb(T(1), W, phi2, Z);
            }
        }

        if (i == 1)
            T2 = V;
        else if (i <= s)
            T2 = lincomb(T(2), V, T(-1), T0);

        if (i <= s - 1 && ((s % 2 == 0) != (i % 2 == 0))) axpy(U, T(1), T2);

        T0 = std::move(T1);
        T1 = T2;

        if (final_pass) rep.S = std::move(V);
    }

    rep.C = std::move(T2);
    if (undo == UndoMode::inside) {
        // rep.S already holds sin of the unshifted argument
    } else if (opt.id <= 2) {
        rep.S = matmat(*A, scaled(rep.S, ts), counter);
    } else {
        scale_inplace(rep.S, T(1) / sT);
    }
    if (undo == UndoMode::outside) {
        DenseBlock<T> C2 = lincomb(phi1, rep.C, k0sign * phi2, rep.S);
        rep.S = lincomb(phi1, rep.S, phi2, rep.C);
        rep.C = std::move(C2);
    }

    rep.matvecs = counter.count;
    if (external) external->count += counter.count;
    return rep;
}

/// e^{tA} B = cosh(tA)B + sinh(tA)B.
template <class T>
DenseBlock<T> exp_action(T t, const SparseMatrix<T>& A, const DenseBlock<T>& B, double tol,
                         const FunmvConfig& cfg = {}, MatvecCounter* external = nullptr) {
    FunmvReport<T> rep = funmv(t, A, B, tol, FunmvOption::from_id(2), cfg, external);
    DenseBlock<T> out = rep.C;
    axpy(out, T(1), rep.S);
    return out;
}

} // namespace funmv
