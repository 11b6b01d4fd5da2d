#include <doctest.h>

#include <cmath>
#include <random>

#include "funmv/generators.hpp"
#include "funmv/integrator.hpp"
#ifdef FUNMV_HAVE_ORACLE
#include "funmv/oracle.hpp"
#endif

using namespace funmv;

namespace {

constexpr double kTolD = 1.1102230246251565e-16;

/// SPD wave operator: the positive Laplacian, -poisson.
SparseMatrix<double> laplacian(index_t k) { return poisson_grid(k).scaled(-1.0); }

double energy(const SparseMatrix<double>& a, const IntegratorState& st) {
    MatvecCounter c;
    auto ay = matmat(a, DenseBlock<double>::from_column(st.y), c);
    double e = 0;
    for (std::size_t i = 0; i < st.y.size(); ++i) {
        e += 0.5 * st.y_prime[i] * st.y_prime[i];
        e += 0.5 * st.y[i] * ay(static_cast<index_t>(i), 0);
    }
    return e;
}

} // namespace

TEST_SUITE("integrator") {

TEST_CASE("scalar harmonic oscillator: one step is exact") {
    const double omega = 2.0, h = 0.3;
    auto a = SparseMatrix<double>::diagonal({omega * omega, 9.0, 16.0});
    IntegratorState st;
    st.y = {1.0, 0.0, 0.0};
    st.y_prime = {0.0, 0.0, 0.0};
    st.h = h;
    auto next = step(a, st, Force{}, FilterSpec::none(), kTolD);
    CHECK(next.y[0] == doctest::Approx(std::cos(h * omega)).epsilon(1e-13));
    CHECK(next.y[1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(next.y_prime[0] == doctest::Approx(-omega * std::sin(h * omega)).epsilon(1e-13));
    CHECK(next.t_now == doctest::Approx(h));
}

TEST_CASE("n_steps = 0 returns the initial state") {
    auto a = laplacian(3);
    auto traj = run(a, b_ones(9), std::vector<double>(9, 0.0), Force{}, FilterSpec::none(), 0.1, 0, kTolD, true);
    REQUIRE(traj.states.size() == 1);
    CHECK(traj.states[0].y == b_ones(9));
    CHECK(traj.matvecs == 0);
}

#ifdef FUNMV_HAVE_ORACLE
TEST_CASE("linear problem: N steps reproduce the exact flow") {
    auto a = laplacian(3);
    const double h = 0.1;
    const int n_steps = 10;
    auto y0 = b_cos(9);
    std::vector<double> yp0(9, 0.0);
    auto traj = run(a, y0, yp0, Force{}, FilterSpec::none(), h, n_steps, kTolD, false);
    const auto& fin = traj.states.back();

    const double t = h * n_steps;
    auto ref = oracle::symmetric_pair(5, t, a, DenseBlock<double>::from_column(y0));
    double err = 0, norm = 0;
    for (index_t i = 0; i < 9; ++i) {
        err = std::max(err, std::abs(fin.y[static_cast<std::size_t>(i)] - ref.C(i, 0)));
        norm = std::max(norm, std::abs(ref.C(i, 0)));
    }
    CHECK(err <= n_steps * 10 * kTolD * std::max(norm, 1.0) * 100);
}
#endif

TEST_CASE("energy conservation over 100 steps") {
    auto a = laplacian(3);
    auto y0 = b_cos(9);
    std::vector<double> yp0(9, 0.0);
    auto traj = run(a, y0, yp0, Force{}, FilterSpec::none(), 0.05, 100, kTolD, true);
    const double e0 = energy(a, traj.states.front());
    for (const auto& st : traj.states) CHECK(std::abs(energy(a, st) - e0) <= 1e-8 * std::abs(e0));
}

TEST_CASE("identity filters reduce ghat to g") {
    auto a = laplacian(3);
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> val(-1, 1);
    IntegratorState st;
    st.y.resize(9);
    st.y_prime.resize(9);
    for (auto& x : st.y) x = val(rng);
    for (auto& x : st.y_prime) x = val(rng);
    st.h = 0.2;

    const Force g = [](const std::vector<double>& y) {
        std::vector<double> out(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = 0.1 * std::sin(y[i]);
        return out;
    };
    auto with_none = step(a, st, g, FilterSpec::none(), kTolD);

    // manual assembly with ghat = g(y), mirroring the update formulas
    MatvecCounter c;
    DenseBlock<double> b(9, 3);
    std::copy(st.y.begin(), st.y.end(), b.col(0));
    std::copy(st.y_prime.begin(), st.y_prime.end(), b.col(1));
    auto gy = g(st.y);
    std::copy(gy.begin(), gy.end(), b.col(2));
    auto rep = funmv::funmv(st.h, a, b, kTolD, FunmvOption::from_id(5));
    for (index_t i = 0; i < 9; ++i) {
        const double yi = rep.C(i, 0) + st.h * rep.S(i, 1) + 0.5 * st.h * st.h * rep.S(i, 2);
        CHECK(with_none.y[static_cast<std::size_t>(i)] == doctest::Approx(yi).epsilon(1e-14));
    }
}

TEST_CASE("filters change the averaged forcing but stay close for small h") {
    auto a = laplacian(3);
    IntegratorState st;
    st.y = b_cos(9);
    st.y_prime.assign(9, 0.0);
    st.h = 0.05;
    const Force g = [](const std::vector<double>& y) {
        std::vector<double> out(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::sin(y[i]);
        return out;
    };
    auto plain = step(a, st, g, FilterSpec::none(), kTolD);
    auto hl = step(a, st, g, FilterSpec::hairer_lubich(), kTolD);
    auto gh = step(a, st, g, FilterSpec::grimm_hochbruck(), kTolD);
    double d1 = 0, d2 = 0;
    for (std::size_t i = 0; i < 9; ++i) {
        d1 = std::max(d1, std::abs(plain.y[i] - hl.y[i]));
        d2 = std::max(d2, std::abs(plain.y[i] - gh.y[i]));
    }
    CHECK(d1 > 0); // the filters genuinely act
    CHECK(d1 <= 1e-3);
    CHECK(d2 <= 1e-3);
    CHECK(gh.matvecs > hl.matvecs); // sinc^2 psi and sinc phi cost extra applications
}

TEST_CASE("spm cache: bitwise-identical trajectory, estimation paid once") {
    // scaled so that h^2 A is far past the norm-bound branch: the
    // full-alpha path fires and re-estimation would cost every step
    auto a = laplacian(4).scaled(4000.0);
    auto y0 = b_cos(16);
    std::vector<double> yp0(16, 0.0);
    const double h = 1.0;
    const int n_steps = 4;
    auto cached = run(a, y0, yp0, Force{}, FilterSpec::none(), h, n_steps, kTolD, true);
    auto plain = run(a, y0, yp0, Force{}, FilterSpec::none(), h, n_steps, kTolD, false);

    for (int k = 0; k <= n_steps; ++k) {
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(cached.states[static_cast<std::size_t>(k)].y[i] ==
                  plain.states[static_cast<std::size_t>(k)].y[i]);
            CHECK(cached.states[static_cast<std::size_t>(k)].y_prime[i] ==
                  plain.states[static_cast<std::size_t>(k)].y_prime[i]);
        }
    }
    CHECK(cached.spm_build_cost > 0);
    CHECK(plain.matvecs - cached.matvecs == (n_steps - 1) * cached.spm_build_cost);
}

TEST_CASE("forced pendulum chain matches a fine-step reference") {
    // tridiagonal stiffness, weak sine forcing
    std::vector<std::tuple<index_t, index_t, double>> trip;
    const index_t n = 8;
    for (index_t i = 0; i < n; ++i) {
        trip.emplace_back(i, i, 2.0);
        if (i > 0) trip.emplace_back(i, i - 1, -1.0);
        if (i + 1 < n) trip.emplace_back(i, i + 1, -1.0);
    }
    auto a = SparseMatrix<double>::from_triplets(n, std::move(trip));
    const Force g = [](const std::vector<double>& y) {
        std::vector<double> out(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = 1e-3 * std::sin(y[i]);
        return out;
    };
    auto y0 = b_ones(n);
    std::vector<double> yp0(static_cast<std::size_t>(n), 0.0);

    auto coarse = run(a, y0, yp0, g, FilterSpec::none(), 0.05, 20, kTolD, false);
    auto fine = run(a, y0, yp0, g, FilterSpec::none(), 0.0025, 400, kTolD, false);
    double err = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
        err = std::max(err, std::abs(coarse.states.back().y[i] - fine.states.back().y[i]));
    CHECK(err <= 1e-4);
}

TEST_CASE("h must be positive") {
    auto a = laplacian(2);
    IntegratorState st;
    st.y.assign(4, 1.0);
    st.y_prime.assign(4, 0.0);
    st.h = 0.0;
    CHECK_THROWS_AS(step(a, st, Force{}, FilterSpec::none(), kTolD), input_error);
}

} // TEST_SUITE
