#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "funmv/funmv.hpp"

namespace funmv {

/// Filter functions for the averaged forcing g_hat(y) = psi(h sqrtA) g(phi(h sqrtA) y).
/// Always evaluated as actions, never as matrices.
struct FilterSpec {
    enum class Psi { one, sinc, sinc_squared };
    enum class Phi { one, sinc };
    Psi psi = Psi::one;
    Phi phi = Phi::one;

    static FilterSpec none() { return {Psi::one, Phi::one}; }
    static FilterSpec hairer_lubich() { return {Psi::sinc, Phi::one}; }
    static FilterSpec grimm_hochbruck() { return {Psi::sinc_squared, Phi::sinc}; }
};

struct IntegratorState {
    std::vector<double> y;
    std::vector<double> y_prime;
    double t_now = 0;
    double h = 0;
    long long matvecs = 0; // cumulative
};

/// g(y); an empty function means g == 0.
using Force = std::function<std::vector<double>(const std::vector<double>&)>;

namespace detail {

/// sinc(h sqrtA) v through one option-5 call.
inline std::vector<double> sinc_action(const SparseMatrix<double>& a, const std::vector<double>& v, double h,
                                       double tol, const FunmvConfig& cfg, MatvecCounter& counter) {
    auto rep = funmv(h, a, DenseBlock<double>::from_column(v), tol, FunmvOption::from_id(5), cfg, &counter);
    return rep.S.column(0);
}

inline std::vector<double> averaged_force(const SparseMatrix<double>& a, const std::vector<double>& y, const Force& g,
                                          const FilterSpec& filter, double h, double tol, const FunmvConfig& cfg,
                                          MatvecCounter& counter) {
    std::vector<double> yf = y;
    if (filter.phi == FilterSpec::Phi::sinc) yf = sinc_action(a, yf, h, tol, cfg, counter);
    std::vector<double> gy = g(yf);
    if (filter.psi == FilterSpec::Psi::sinc || filter.psi == FilterSpec::Psi::sinc_squared)
        gy = sinc_action(a, gy, h, tol, cfg, counter);
    if (filter.psi == FilterSpec::Psi::sinc_squared) gy = sinc_action(a, gy, h, tol, cfg, counter);
    return gy;
}

} // namespace detail

/// One step of the trigonometric scheme for y'' + Ay = g(y). A single
/// option-5 call on the block [y, y', g_hat] yields all cos/sinc action
/// vectors of the update.
inline IntegratorState step(const SparseMatrix<double>& a, const IntegratorState& state, const Force& g,
                            const FilterSpec& filter, double tol, const FunmvConfig& cfg = {}) {
    if (!(state.h > 0)) throw input_error("integrator: h must be positive");
    const index_t n = a.n;
    const double h = state.h;
    MatvecCounter counter;

    const bool forced = static_cast<bool>(g);
    std::vector<double> ghat;
    if (forced) ghat = detail::averaged_force(a, state.y, g, filter, h, tol, cfg, counter);

    DenseBlock<double> b(n, forced ? 3 : 2);
    std::copy(state.y.begin(), state.y.end(), b.col(0));
    std::copy(state.y_prime.begin(), state.y_prime.end(), b.col(1));
    if (forced) std::copy(ghat.begin(), ghat.end(), b.col(2));

    auto rep = funmv(h, a, b, tol, FunmvOption::from_id(5), cfg, &counter);

    IntegratorState next;
    next.h = h;
    next.t_now = state.t_now + h;
    next.y.resize(static_cast<std::size_t>(n));
    next.y_prime.resize(static_cast<std::size_t>(n));

    // y_{n+1} = cos(h sqrtA) y + h sinc(h sqrtA) y' + h^2/2 sinc(h sqrtA) ghat
    for (index_t i = 0; i < n; ++i) {
        double v = rep.C(i, 0) + h * rep.S(i, 1);
        if (forced) v += 0.5 * h * h * rep.S(i, 2);
        next.y[static_cast<std::size_t>(i)] = v;
    }

    // first term of the velocity update: -h A sinc(h sqrtA) y, the
    // square-root-free form of -sqrtA sin(h sqrtA) y
    DenseBlock<double> as = matmat(a, DenseBlock<double>::from_column(rep.S.column(0)), counter);
    std::vector<double> ghat_next;
    if (forced) ghat_next = detail::averaged_force(a, next.y, g, filter, h, tol, cfg, counter);
    for (index_t i = 0; i < n; ++i) {
        double v = -h * as(i, 0) + rep.C(i, 1);
        if (forced) v += 0.5 * h * (rep.C(i, 2) + ghat_next[static_cast<std::size_t>(i)]);
        next.y_prime[static_cast<std::size_t>(i)] = v;
    }

    next.matvecs = state.matvecs + counter.count;
    return next;
}

struct Trajectory {
    std::vector<IntegratorState> states; // states[0] is the initial state
    long long matvecs = 0;
    long long spm_build_cost = 0;
};

/// Fixed-step integration. With spm_cache the alpha/theta ratio matrix is
/// built once from A and reused by every step, so estimation is paid once.
inline Trajectory run(const SparseMatrix<double>& a, const std::vector<double>& y0, const std::vector<double>& y0p,
                      const Force& g, const FilterSpec& filter, double h, int n_steps, double tol, bool spm_cache,
                      FunmvConfig cfg = {}) {
    Trajectory traj;
    IntegratorState st;
    st.y = y0;
    st.y_prime = y0p;
    st.h = h;
    traj.states.push_back(st);

    SpmMatrix spm;
    if (spm_cache && n_steps > 0) {
        MatvecCounter build;
        spm = build_spm(a, 0.5, tol, cfg.select, build);
        traj.spm_build_cost = build.count;
        cfg.spm = &spm;
        st.matvecs += build.count;
    }

    for (int i = 0; i < n_steps; ++i) {
        st = step(a, st, g, filter, tol, cfg);
        traj.states.push_back(st);
    }
    traj.matvecs = st.matvecs;
    return traj;
}

} // namespace funmv
