#include "funmv/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace funmv::oracle {

namespace {

double sinc1(double x) { return x == 0 ? 1.0 : std::sin(x) / x; }
double sinch1(double x) { return x == 0 ? 1.0 : std::sinh(x) / x; }

/// cos/sinc of sqrt(x) as even functions of x, valid for x < 0.
double cos_sqrt(double x) { return x >= 0 ? std::cos(std::sqrt(x)) : std::cosh(std::sqrt(-x)); }
double sinc_sqrt(double x) { return x >= 0 ? sinc1(std::sqrt(x)) : sinch1(std::sqrt(-x)); }
double cosh_sqrt(double x) { return x >= 0 ? std::cosh(std::sqrt(x)) : std::cos(std::sqrt(-x)); }
double sinch_sqrt(double x) { return x >= 0 ? sinch1(std::sqrt(x)) : sinc1(std::sqrt(-x)); }

template <class T>
using EMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
EMat<T> to_eigen(const SparseMatrix<T>& a) {
    EMat<T> m = EMat<T>::Zero(a.n, a.n);
    for (index_t i = 0; i < a.n; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) m(i, a.col_idx[k]) = a.values[k];
    return m;
}

template <class T>
EMat<T> to_eigen(const DenseBlock<T>& b) {
    EMat<T> m(b.n, b.n0);
    for (index_t j = 0; j < b.n0; ++j)
        for (index_t i = 0; i < b.n; ++i) m(i, j) = b(i, j);
    return m;
}

template <class T>
DenseBlock<T> from_eigen(const EMat<T>& m) {
    DenseBlock<T> b(m.rows(), m.cols());
    for (index_t j = 0; j < b.n0; ++j)
        for (index_t i = 0; i < b.n; ++i) b(i, j) = m(i, j);
    return b;
}

template <class T>
double mat_one_norm(const EMat<T>& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

/// Compensated matrix accumulation: sum += term with a running error
/// matrix, so the series can stagnate at machine precision.
template <class T>
void kahan_add(EMat<T>& sum, EMat<T>& comp, const EMat<T>& term) {
    EMat<T> y = term - comp;
    EMat<T> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

/// E = sum W^k/(2k)!, F = sum W^k/(2k+1)! by direct term recursion.
template <class T>
void even_series(const EMat<T>& w, EMat<T>& e, EMat<T>& f) {
    const auto n = w.rows();
    e = EMat<T>::Identity(n, n);
    f = EMat<T>::Identity(n, n);
    EMat<T> ce = EMat<T>::Zero(n, n), cf = EMat<T>::Zero(n, n);
    EMat<T> term = EMat<T>::Identity(n, n);
    for (int k = 1; k <= 80; ++k) {
        term = (term * w) / T(static_cast<double>(2 * k - 1) * static_cast<double>(2 * k));
        kahan_add(e, ce, term);
        kahan_add(f, cf, EMat<T>(term / T(static_cast<double>(2 * k + 1))));
        if (mat_one_norm(term) <= 1e-300 + 1e-18 * mat_one_norm(e)) break;
    }
}

} // namespace

std::pair<double, double> scalar_pair(int id, double t, double lambda) {
    const double x = t * lambda;
    switch (id) {
        case 1: return {std::cos(x), std::sin(x)};
        case 2: return {std::cosh(x), std::sinh(x)};
        case 3: return {std::cos(x), sinc1(x)};
        case 4: return {std::cosh(x), sinch1(x)};
        case 5: {
            const double y = t * t * lambda;
            return {cos_sqrt(y), sinc_sqrt(y)};
        }
        case 6: {
            const double y = t * t * lambda;
            return {cosh_sqrt(y), sinch_sqrt(y)};
        }
    }
    throw input_error("oracle: option id must be 1..6");
}

OracleResult<double> symmetric_pair(int id, double t, const SparseMatrix<double>& a, const DenseBlock<double>& b) {
    if (a.n > 16384) throw input_error("oracle: symmetric path limited to n <= 16384");
    EMat<double> m = to_eigen(a);
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-13 * (1.0 + m.cwiseAbs().maxCoeff()))
        throw input_error("oracle: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<EMat<double>> es(m);
    if (es.info() != Eigen::Success) throw numerical_error("oracle: eigendecomposition failed");
    const EMat<double> q = es.eigenvectors();
    const Eigen::VectorXd lam = es.eigenvalues();

    EMat<double> w = q.transpose() * to_eigen(b);
    EMat<double> wc = w, ws = w;
    for (index_t i = 0; i < a.n; ++i) {
        const auto [fc, fs] = scalar_pair(id, t, lam(i));
        wc.row(i) *= fc;
        ws.row(i) *= fs;
    }
    OracleResult<double> out;
    out.C = from_eigen(EMat<double>(q * wc));
    out.S = from_eigen(EMat<double>(q * ws));
    return out;
}

template <class T>
OracleResult<T> general_pair(int id, T t, const SparseMatrix<T>& a, const DenseBlock<T>& b) {
    if (id < 1 || id > 6) throw input_error("oracle: option id must be 1..6");
    if (a.n > 512) throw input_error("oracle: general path limited to n <= 512");
    const bool trig = (id % 2 == 1);
    const bool sqrt_arg = (id >= 5);

    EMat<T> x;           // the sigma = 1 argument tA, when applicable
    EMat<T> w(a.n, a.n); // square of the argument
    if (sqrt_arg) {
        w = to_eigen(a) * (t * t);
    } else {
        x = to_eigen(a) * t;
        w = x * x;
    }
    if (trig) w = -w;

    int j = 0;
    double nw = mat_one_norm(w);
    if (!std::isfinite(nw)) throw numerical_error("oracle: argument overflow");
    while (nw > 0.25) {
        nw /= 4.0;
        ++j;
    }
    EMat<T> wsc = w / T(std::ldexp(1.0, 2 * j));

    EMat<T> e, f;
    even_series(wsc, e, f);
    for (int r = 0; r < j; ++r) {
        f = f * e; // sinc(2y) = sinc(y) cos(y), with the pre-update cosine
        e = T(2) * (e * e) - EMat<T>::Identity(a.n, a.n);
    }

    const EMat<T> bm = to_eigen(b);
    OracleResult<T> out;
    out.C = from_eigen(EMat<T>(e * bm));
    if (id <= 2)
        out.S = from_eigen(EMat<T>(x * (f * bm))); // sin X = X sinc X
    else
        out.S = from_eigen(EMat<T>(f * bm));
    return out;
}

template <class T>
DenseBlock<T> dense_expm(const SparseMatrix<T>& a, T t) {
    if (a.n > 512) throw input_error("oracle: expm limited to n <= 512");
    EMat<T> x = to_eigen(a) * t;
    int j = 0;
    double nx = mat_one_norm(x);
    if (!std::isfinite(nx)) throw numerical_error("oracle: argument overflow");
    while (nx > 0.5) {
        nx /= 2.0;
        ++j;
    }
    EMat<T> xsc = x / T(std::ldexp(1.0, j));

    EMat<T> e = EMat<T>::Identity(a.n, a.n);
    EMat<T> comp = EMat<T>::Zero(a.n, a.n);
    EMat<T> term = EMat<T>::Identity(a.n, a.n);
    for (int k = 1; k <= 120; ++k) {
        term = (term * xsc) / T(static_cast<double>(k));
        kahan_add(e, comp, term);
        if (mat_one_norm(term) <= 1e-300 + 1e-18 * mat_one_norm(e)) break;
    }
    for (int r = 0; r < j; ++r) e = e * e;
    return from_eigen(e);
}

OracleResult<double> poisson_pair(int id, double t, index_t k, const DenseBlock<double>& b) {
    const index_t n = k * k;
    if (b.n != n) throw input_error("oracle: block size must be k^2");
    const double pi = std::acos(-1.0);

    EMat<double> q(k, k); // symmetric orthogonal sine-transform matrix
    for (index_t p = 0; p < k; ++p)
        for (index_t i = 0; i < k; ++i)
            q(p, i) = std::sin(static_cast<double>((p + 1) * (i + 1)) * pi / static_cast<double>(k + 1)) *
                      std::sqrt(2.0 / static_cast<double>(k + 1));

    std::vector<double> mu(static_cast<std::size_t>(k));
    for (index_t p = 0; p < k; ++p) mu[static_cast<std::size_t>(p)] = 2.0 * std::cos(static_cast<double>(p + 1) * pi / static_cast<double>(k + 1));

    OracleResult<double> out;
    out.C = DenseBlock<double>(n, b.n0);
    out.S = DenseBlock<double>(n, b.n0);
    for (index_t c = 0; c < b.n0; ++c) {
        EMat<double> m(k, k);
        for (index_t i = 0; i < k; ++i)
            for (index_t jx = 0; jx < k; ++jx) m(i, jx) = b(i * k + jx, c);
        EMat<double> coef = q * m * q;
        EMat<double> cc = coef, cs = coef;
        for (index_t p = 0; p < k; ++p)
            for (index_t qq = 0; qq < k; ++qq) {
                const double lam = -4.0 + mu[static_cast<std::size_t>(p)] + mu[static_cast<std::size_t>(qq)];
                const auto [fc, fs] = scalar_pair(id, t, lam);
                cc(p, qq) *= fc;
                cs(p, qq) *= fs;
            }
        EMat<double> rc = q * cc * q;
        EMat<double> rs = q * cs * q;
        for (index_t i = 0; i < k; ++i)
            for (index_t jx = 0; jx < k; ++jx) {
                out.C(i * k + jx, c) = rc(i, jx);
                out.S(i * k + jx, c) = rs(i, jx);
            }
    }
    return out;
}

template OracleResult<double> general_pair<double>(int, double, const SparseMatrix<double>&,
                                                   const DenseBlock<double>&);
template OracleResult<std::complex<double>> general_pair<std::complex<double>>(int, std::complex<double>,
                                                                               const SparseMatrix<std::complex<double>>&,
                                                                               const DenseBlock<std::complex<double>>&);
template DenseBlock<double> dense_expm<double>(const SparseMatrix<double>&, double);
template DenseBlock<std::complex<double>> dense_expm<std::complex<double>>(const SparseMatrix<std::complex<double>>&,
                                                                           std::complex<double>);

} // namespace funmv::oracle
