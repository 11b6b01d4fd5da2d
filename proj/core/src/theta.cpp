#include "funmv/theta.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

namespace funmv {

double precision_tol(Precision p) {
    switch (p) {
        case Precision::half: return std::ldexp(1.0, -10);
        case Precision::single: return std::ldexp(1.0, -24);
        case Precision::dbl: return std::ldexp(1.0, -53);
    }
    throw input_error("unknown precision");
}

double parse_tol(const std::string& s) {
    if (s == "half") return precision_tol(Precision::half);
    if (s == "single") return precision_tol(Precision::single);
    if (s == "double") return precision_tol(Precision::dbl);
    std::istringstream in(s);
    double tol = 0;
    if (!(in >> tol) || !(in >> std::ws).eof() || !(tol > 0) || !(tol < 1))
        throw input_error("tolerance must be half|single|double or a float in (0,1), got '" + s + "'");
    return tol;
}

double rho(int m, double theta) {
    if (theta == 0.0) return 0.0;
    // first tail term theta^(2m+2)/(2m+2)!
    double term = 1.0;
    for (int i = 1; i <= 2 * m + 2; ++i) term *= theta / i;
    if (!std::isfinite(term)) return std::numeric_limits<double>::infinity();
    double sum = 0.0;
    long j = m + 1;
    for (;;) {
        sum += term;
        if (!std::isfinite(sum)) return std::numeric_limits<double>::infinity();
        term *= theta * theta / ((2.0 * j + 1) * (2.0 * j + 2));
        ++j;
        if (term < 1e-30 * (sum + 1e-300)) break;
    }
    return sum;
}

double solve_theta(int m, double tol) {
    if (!(tol > 0) || !(tol < 1)) throw input_error("solve_theta: tol must be in (0,1)");
    double lo = 0.0;
    double hi = 2.0 * m + 2.0;
    while (rho(m, hi) <= tol) hi *= 2.0;
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (rho(m, mid) <= tol)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

ThetaTable make_theta_table(double tol, int mmax) {
    ThetaTable t;
    t.tol = tol;
    t.theta.resize(static_cast<std::size_t>(mmax));
    for (int m = 1; m <= mmax; ++m) t.theta[static_cast<std::size_t>(m - 1)] = solve_theta(m, tol);
    return t;
}

namespace {
constexpr int kBuiltinMmax = 60;

const ThetaTable& full_builtin(Precision p) {
    static ThetaTable tables[3];
    static std::once_flag flags[3];
    const int idx = static_cast<int>(p);
    std::call_once(flags[idx], [&] { tables[idx] = make_theta_table(precision_tol(p), kBuiltinMmax); });
    return tables[idx];
}
} // namespace

ThetaTable builtin_table(Precision p, int mmax) {
    if (mmax < 1 || mmax > kBuiltinMmax) throw input_error("builtin_table: mmax must be in [1,60]");
    const ThetaTable& full = full_builtin(p);
    ThetaTable t;
    t.tol = full.tol;
    t.theta.assign(full.theta.begin(), full.theta.begin() + mmax);
    return t;
}

ThetaTable theta_table_for(double tol, int mmax) {
    if (mmax <= kBuiltinMmax)
        for (Precision p : {Precision::half, Precision::single, Precision::dbl})
            if (tol == precision_tol(p)) return builtin_table(p, mmax);
    return make_theta_table(tol, mmax);
}

} // namespace funmv
