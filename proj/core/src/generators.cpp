#include "funmv/generators.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

namespace funmv {

SparseMatrix<double> poisson_grid(index_t k) {
    if (k < 1) throw input_error("poisson_grid: k must be >= 1");
    const index_t n = k * k;
    std::vector<std::tuple<index_t, index_t, double>> trip;
    trip.reserve(static_cast<std::size_t>(5 * n));
    const auto id = [k](index_t i, index_t j) { return i * k + j; };
    for (index_t i = 0; i < k; ++i)
        for (index_t j = 0; j < k; ++j) {
            const index_t r = id(i, j);
            trip.emplace_back(r, r, -4.0);
            if (i > 0) trip.emplace_back(r, id(i - 1, j), 1.0);
            if (i + 1 < k) trip.emplace_back(r, id(i + 1, j), 1.0);
            if (j > 0) trip.emplace_back(r, id(i, j - 1), 1.0);
            if (j + 1 < k) trip.emplace_back(r, id(i, j + 1), 1.0);
        }
    return SparseMatrix<double>::from_triplets(n, std::move(trip));
}

SparseMatrix<double> triw_neg(index_t n, double c) {
    if (n < 1) throw input_error("triw_neg: n must be >= 1");
    std::vector<std::tuple<index_t, index_t, double>> trip;
    trip.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    for (index_t i = 0; i < n; ++i) {
        trip.emplace_back(i, i, -1.0);
        for (index_t j = i + 1; j < n; ++j) trip.emplace_back(i, j, -c);
    }
    return SparseMatrix<double>::from_triplets(n, std::move(trip));
}

SparseMatrix<double> diag_range(index_t n) {
    if (n < 1) throw input_error("diag_range: n must be >= 1");
    std::vector<double> d(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = static_cast<double>(i + 1);
    return SparseMatrix<double>::diagonal(d);
}

std::vector<double> b_cos(index_t n) {
    std::vector<double> b(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = std::cos(static_cast<double>(i + 1));
    return b;
}

std::vector<double> b_ones(index_t n) { return std::vector<double>(static_cast<std::size_t>(n), 1.0); }

std::vector<double> b_e1_en(index_t n) {
    std::vector<double> b(static_cast<std::size_t>(n), 0.0);
    b.front() = 1.0;
    b.back() = 1.0;
    return b;
}

SparseMatrix<double> make_generator(const std::string& descr) {
    std::istringstream in(descr);
    std::string name;
    std::getline(in, name, ':');
    if (name == "poisson") {
        index_t k = 0;
        char sep = 0;
        if (!(in >> k)) throw input_error("generator 'poisson:k' needs an integer k");
        if (in >> sep) throw input_error("generator 'poisson:k' takes exactly one argument");
        return poisson_grid(k);
    }
    if (name == "triw") {
        index_t n = 0;
        double c = 0;
        char sep = 0;
        if (!(in >> n >> sep >> c) || sep != ':') throw input_error("generator 'triw:n:c' needs n and c");
        return triw_neg(n, c);
    }
    if (name == "diag") {
        index_t n = 0;
        if (!(in >> n)) throw input_error("generator 'diag:n' needs an integer n");
        return diag_range(n);
    }
    throw input_error("unknown generator '" + name + "' (expected poisson:k, triw:n:c, or diag:n)");
}

std::vector<double> make_b_vector(const std::string& name, index_t n) {
    if (name == "cos") return b_cos(n);
    if (name == "ones") return b_ones(n);
    if (name == "e1en") return b_e1_en(n);
    throw input_error("unknown b vector '" + name + "' (expected cos, ones, or e1en)");
}

} // namespace funmv
