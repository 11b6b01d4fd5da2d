#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "funmv/dense_block.hpp"
#include "funmv/sparse_matrix.hpp"

namespace funmv {

struct MmHeader {
    bool coordinate = true; // false: array
    bool complex_field = false;
    bool pattern = false;
    bool integer_field = false;
    enum class Symmetry { general, symmetric, skew, hermitian } symmetry = Symmetry::general;
};

namespace detail {

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] inline void fail(const std::string& name, long line, const std::string& what) {
    throw input_error(name + ":" + std::to_string(line) + ": " + what);
}

inline MmHeader parse_header(const std::string& banner, const std::string& name) {
    std::istringstream in(banner);
    std::string tag, object, format, field, symmetry;
    in >> tag >> object >> format >> field >> symmetry;
    if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix") fail(name, 1, "not a Matrix Market file");
    MmHeader h;
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (format == "coordinate")
        h.coordinate = true;
    else if (format == "array")
        h.coordinate = false;
    else
        fail(name, 1, "unsupported format '" + format + "'");
    if (field == "real")
        ;
    else if (field == "complex")
        h.complex_field = true;
    else if (field == "integer")
        h.integer_field = true;
    else if (field == "pattern")
        h.pattern = true;
    else
        fail(name, 1, "unsupported field '" + field + "'");
    if (symmetry == "general")
        h.symmetry = MmHeader::Symmetry::general;
    else if (symmetry == "symmetric")
        h.symmetry = MmHeader::Symmetry::symmetric;
    else if (symmetry == "skew-symmetric")
        h.symmetry = MmHeader::Symmetry::skew;
    else if (symmetry == "hermitian")
        h.symmetry = MmHeader::Symmetry::hermitian;
    else
        fail(name, 1, "unsupported symmetry '" + symmetry + "'");
    return h;
}

inline bool next_data_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '%') continue;
        return true;
    }
    return false;
}

template <class T>
T read_value(std::istringstream& in, bool complex_field, const std::string& name, long lineno) {
    double re = 0, im = 0;
    if (!(in >> re)) fail(name, lineno, "malformed numeric value");
    if (complex_field && !(in >> im)) fail(name, lineno, "complex entry needs two values");
    if constexpr (is_complex_v<T>) {
        return T(re, im);
    } else {
        if (im != 0) fail(name, lineno, "complex entry in a real-typed load");
        return T(re);
    }
}

template <class T>
void write_value(std::ostream& out, const T& v) {
    if constexpr (is_complex_v<T>)
        out << v.real() << ' ' << v.imag();
    else
        out << v;
}

} // namespace detail

inline MmHeader peek_mm_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::string banner;
    std::getline(in, banner);
    return detail::parse_header(banner, path);
}

/// Coordinate-format loader. Symmetric/hermitian/skew storage is expanded
/// to both triangles.
template <class T>
SparseMatrix<T> read_sparse(std::istream& in, const std::string& name = "<stream>") {
    std::string line;
    long lineno = 1;
    if (!std::getline(in, line)) detail::fail(name, 1, "empty file");
    const MmHeader h = detail::parse_header(line, name);
    if (!h.coordinate) detail::fail(name, 1, "expected coordinate format for a sparse matrix");
    if (h.pattern) detail::fail(name, 1, "pattern matrices are not supported");
    if (h.complex_field && !is_complex_v<T>) detail::fail(name, 1, "complex file loaded with a real scalar type");

    if (!detail::next_data_line(in, line, lineno)) detail::fail(name, lineno, "missing size line");
    std::istringstream sz(line);
    index_t rows = 0, cols = 0, nnz = 0;
    if (!(sz >> rows >> cols >> nnz)) detail::fail(name, lineno, "malformed size line");
    if (rows != cols) detail::fail(name, lineno, "matrix must be square");

    std::vector<std::tuple<index_t, index_t, T>> trip;
    trip.reserve(static_cast<std::size_t>(nnz));
    for (index_t k = 0; k < nnz; ++k) {
        if (!detail::next_data_line(in, line, lineno)) detail::fail(name, lineno, "unexpected end of file");
        std::istringstream ls(line);
        index_t i = 0, j = 0;
        if (!(ls >> i >> j)) detail::fail(name, lineno, "malformed coordinate line");
        if (i < 1 || i > rows || j < 1 || j > cols) detail::fail(name, lineno, "index out of range");
        const T v = detail::read_value<T>(ls, h.complex_field, name, lineno);
        trip.emplace_back(i - 1, j - 1, v);
        if (h.symmetry != MmHeader::Symmetry::general && i != j) {
            T w = v;
            if (h.symmetry == MmHeader::Symmetry::skew) w = -v;
            if (h.symmetry == MmHeader::Symmetry::hermitian) w = conj_of(v);
            trip.emplace_back(j - 1, i - 1, w);
        }
    }
    auto a = SparseMatrix<T>::from_triplets(rows, std::move(trip));
    a.validate();
    return a;
}

template <class T>
SparseMatrix<T> load_sparse(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    return read_sparse<T>(in, path);
}

/// Array-format loader (column-major, matching DenseBlock storage).
template <class T>
DenseBlock<T> read_dense(std::istream& in, const std::string& name = "<stream>") {
    std::string line;
    long lineno = 1;
    if (!std::getline(in, line)) detail::fail(name, 1, "empty file");
    const MmHeader h = detail::parse_header(line, name);
    if (h.coordinate) detail::fail(name, 1, "expected array format for a dense block");
    if (h.pattern) detail::fail(name, 1, "pattern matrices are not supported");
    if (h.complex_field && !is_complex_v<T>) detail::fail(name, 1, "complex file loaded with a real scalar type");
    if (h.symmetry != MmHeader::Symmetry::general) detail::fail(name, 1, "array blocks must be general");

    if (!detail::next_data_line(in, line, lineno)) detail::fail(name, lineno, "missing size line");
    std::istringstream sz(line);
    index_t rows = 0, cols = 0;
    if (!(sz >> rows >> cols)) detail::fail(name, lineno, "malformed size line");
    DenseBlock<T> b(rows, cols);
    for (index_t k = 0; k < rows * cols; ++k) {
        if (!detail::next_data_line(in, line, lineno)) detail::fail(name, lineno, "unexpected end of file");
        std::istringstream ls(line);
        b.data[static_cast<std::size_t>(k)] = detail::read_value<T>(ls, h.complex_field, name, lineno);
    }
    return b;
}

template <class T>
DenseBlock<T> load_dense(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    return read_dense<T>(in, path);
}

template <class T>
void write_sparse(std::ostream& out, const SparseMatrix<T>& a) {
    out << "%%MatrixMarket matrix coordinate " << (is_complex_v<T> ? "complex" : "real") << " general\n";
    out << std::setprecision(17);
    out << a.n << ' ' << a.n << ' ' << a.nnz() << '\n';
    for (index_t i = 0; i < a.n; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            out << (i + 1) << ' ' << (a.col_idx[k] + 1) << ' ';
            detail::write_value(out, a.values[k]);
            out << '\n';
        }
}

template <class T>
void write_dense(std::ostream& out, const DenseBlock<T>& b) {
    out << "%%MatrixMarket matrix array " << (is_complex_v<T> ? "complex" : "real") << " general\n";
    out << std::setprecision(17);
    out << b.n << ' ' << b.n0 << '\n';
    for (const T& v : b.data) {
        detail::write_value(out, v);
        out << '\n';
    }
}

template <class T>
void save_sparse(const std::string& path, const SparseMatrix<T>& a) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    write_sparse(out, a);
}

template <class T>
void save_dense(const std::string& path, const DenseBlock<T>& b) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    write_dense(out, b);
}

} // namespace funmv
