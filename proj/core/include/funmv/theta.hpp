#pragma once

#include <string>
#include <vector>

#include "funmv/types.hpp"

namespace funmv {

enum class Precision { half, single, dbl };

/// 2^-10, 2^-24, 2^-53.
double precision_tol(Precision p);

/// Parses "half" | "single" | "double" | a literal float in (0,1).
double parse_tol(const std::string& s);

/// Truncation remainder of the degree-m even Taylor polynomial,
/// rho_m(theta) = sum_{j>m} theta^(2j)/(2j)!, summed directly as a tail
/// (never as cosh minus the partial sum). Returns +inf on overflow.
double rho(int m, double theta);

/// Largest theta with rho_m(theta) <= tol, by bracketing + bisection to
/// relative width 1e-10.
double solve_theta(int m, double tol);

/// theta_1..theta_mmax for one tolerance.
struct ThetaTable {
    double tol = 0;
    std::vector<double> theta; // theta[m-1] = theta_m

    int mmax() const { return static_cast<int>(theta.size()); }
    double at(int m) const { return theta.at(static_cast<std::size_t>(m - 1)); }
};

ThetaTable make_theta_table(double tol, int mmax);

/// Cached table for one of the three built-in precisions, mmax <= 60.
ThetaTable builtin_table(Precision p, int mmax);

/// Table for an arbitrary tolerance; built-in precisions hit the cache.
ThetaTable theta_table_for(double tol, int mmax);

} // namespace funmv
