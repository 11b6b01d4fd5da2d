#include <doctest.h>

#include <cmath>
#include <random>

#include "funmv/generators.hpp"
#include "funmv/norm_est.hpp"

using namespace funmv;

namespace {

/// Exact ||A^e||_1 via repeated dense application (test-side reference).
double exact_power_norm(const SparseMatrix<double>& a, int e) {
    MatvecCounter c;
    DenseBlock<double> id(a.n, a.n);
    for (index_t i = 0; i < a.n; ++i) id(i, i) = 1.0;
    for (int k = 0; k < e; ++k) id = matmat(a, id, c);
    return one_norm_block(id);
}

SparseMatrix<double> random_nonneg(index_t n, std::mt19937& rng, double density) {
    std::uniform_real_distribution<double> val(0.0, 1.0);
    std::vector<std::tuple<index_t, index_t, double>> trip;
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j)
            if (val(rng) < density) trip.emplace_back(i, j, val(rng));
    if (trip.empty()) trip.emplace_back(0, 0, 1.0);
    return SparseMatrix<double>::from_triplets(n, std::move(trip));
}

} // namespace

TEST_SUITE("norm-est") {

TEST_CASE("exact path: diagonal powers") {
    auto a = diag_range(100);
    MatvecCounter c;
    const double est = est_one_norm_power(PowerOperator<double>{a, 2}, NormEstConfig{}, c);
    CHECK(est == 10000.0);
    CHECK(c.count == 200); // identity block through the counter: e*n
}

TEST_CASE("zero operator estimates zero") {
    SparseMatrix<double> z;
    z.n = 10;
    z.row_ptr.assign(11, 0);
    MatvecCounter c;
    CHECK(est_one_norm_power(PowerOperator<double>{z, 3}, NormEstConfig{}, c) == 0.0);
}

TEST_CASE("estimator path: lower bound on random nonnegative 200x200") {
    std::mt19937 rng(1);
    for (int rep = 0; rep < 5; ++rep) {
        auto a = random_nonneg(200, rng, 0.02);
        MatvecCounter c;
        const double est = est_one_norm_power(PowerOperator<double>{a, 1}, NormEstConfig{}, c);
        const double exact = one_norm(a);
        CHECK(est <= exact * (1 + 1e-12));
        CHECK(est >= 0.2 * exact); // the block estimator is reliably close
    }
}

TEST_CASE("estimator lower bound holds for n <= 300 and higher powers") {
    std::mt19937 rng(5);
    for (index_t n : {150, 300})
        for (int e : {1, 2, 3}) {
            auto a = random_nonneg(n, rng, 0.03);
            MatvecCounter c;
            const double est = est_one_norm_power(PowerOperator<double>{a, e}, NormEstConfig{}, c);
            CHECK(est <= exact_power_norm(a, e) * (1 + 1e-12));
        }
}

TEST_CASE("overflow reports +inf") {
    auto a = SparseMatrix<double>::diagonal({1e200, 1e200});
    MatvecCounter c;
    CHECK(std::isinf(est_one_norm_power(PowerOperator<double>{a, 2}, NormEstConfig{}, c)));
}

TEST_CASE("alpha sequence: nilpotent strictly upper triangular") {
    // strictly upper 4x4: A^4 = 0, so d_8 = 0 and alpha_4 = 0
    auto a = SparseMatrix<double>::from_triplets(
        4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
    MatvecCounter c;
    auto seq = alpha_sequence(a, 1.0, 4, NormEstConfig{}, c);
    CHECK(seq.d.at(8) == 0.0);
    CHECK(seq.alphas.at(4) == 0.0);
    CHECK(seq.cost == c.count);
}

TEST_CASE("alpha sequence: diagonal, sigma = 1/2") {
    auto a = diag_range(100);
    MatvecCounter c;
    auto seq = alpha_sequence(a, 0.5, 2, NormEstConfig{}, c);
    // d_4 = ||A^2||^(1/4) = 10000^(1/4) = 10
    CHECK(seq.d.at(4) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("alpha sequence: normal matrix gives near-constant alphas") {
    auto a = diag_range(50); // symmetric; every d_k = spectral radius 50
    MatvecCounter c;
    auto seq = alpha_sequence(a, 1.0, 5, NormEstConfig{}, c);
    for (int p = 2; p <= 5; ++p) CHECK(seq.alphas.at(p) == doctest::Approx(50.0).epsilon(1e-10));
}

TEST_CASE("invariant: norm chain ||A||^sigma >= d_2 >= alpha_p on the exact path") {
    std::mt19937 rng(9);
    for (int rep = 0; rep < 5; ++rep) {
        auto a = random_nonneg(20, rng, 0.4);
        for (double sigma : {1.0, 0.5}) {
            MatvecCounter c;
            auto seq = alpha_sequence(a, sigma, 5, NormEstConfig{}, c);
            const double d2 = std::sqrt(est_one_norm_power(
                PowerOperator<double>{a, static_cast<int>(2 * sigma + 0.5)}, NormEstConfig{}, c));
            const double surrogate = std::pow(one_norm(a), sigma);
            CHECK(surrogate >= d2 * (1 - 1e-12));
            for (int p = 2; p <= 5; ++p) CHECK(d2 >= seq.alphas.at(p) * (1 - 1e-12));
        }
    }
}

TEST_CASE("estimator cost accounting is exact") {
    auto a = diag_range(100);
    MatvecCounter c;
    c.count = 7; // pre-existing counts must not leak into the delta
    auto seq = alpha_sequence(a, 0.5, 5, NormEstConfig{}, c);
    CHECK(seq.cost == c.count - 7);
    // exact path, e = sigma*2p for p = 2..6: e in {2,3,4,5,6}, n = 100 each
    CHECK(seq.cost == (2 + 3 + 4 + 5 + 6) * 100);
}

TEST_CASE("estimator is deterministic for a fixed seed") {
    std::mt19937 rng(13);
    auto a = random_nonneg(200, rng, 0.02);
    MatvecCounter c1, c2;
    NormEstConfig cfg;
    cfg.seed = 123;
    const double e1 = est_one_norm_power(PowerOperator<double>{a, 2}, cfg, c1);
    const double e2 = est_one_norm_power(PowerOperator<double>{a, 2}, cfg, c2);
    CHECK(e1 == e2);
    CHECK(c1.count == c2.count);
}

} // TEST_SUITE
