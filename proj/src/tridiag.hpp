#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace seelab {

/// Solve (diag, off) * x = rhs for a symmetric constant-coefficient
/// tridiagonal system by the Thomas algorithm.  Requires diagonal dominance
/// (diag > 2*|off| is not necessary but diag > 0 and the matrix SPD is
/// assumed; both callers satisfy it).
inline std::vector<double> solve_tridiag_const(double diag, double off,
                                               std::span<const double> rhs) {
    const std::size_t n = rhs.size();
    std::vector<double> x(n);
    if (n == 0) return x;

    std::vector<double> cp(n);
    cp[0] = off / diag;
    x[0] = rhs[0] / diag;
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag - off * cp[i - 1];
        cp[i] = off / m;
        x[i] = (rhs[i] - off * x[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= cp[i] * x[i + 1];
    }
    return x;
}

} // namespace seelab
