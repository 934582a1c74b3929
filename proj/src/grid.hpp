#pragma once

#include <vector>

namespace seelab {

/// Uniform 1-D grid on (0, length) with n interior nodes and homogeneous
/// Dirichlet boundaries; spacing h = length / (n + 1).
struct Grid {
    int n = 1;
    double length = 1.0;

    double spacing() const { return length / (n + 1); }
    double node(int i) const { return (i + 1) * spacing(); } ///< x_{i+1}, i in [0, n)

    static Grid make(int n, double length); ///< validates arguments
};

/// Nodal values at the interior grid points; boundary values are implicitly 0.
struct State {
    Grid grid;
    std::vector<double> u;

    explicit State(const Grid& g) : grid(g), u(static_cast<size_t>(g.n), 0.0) {}
    State(const Grid& g, std::vector<double> values);

    int size() const { return grid.n; }
    double& operator[](int i) { return u[static_cast<size_t>(i)]; }
    double operator[](int i) const { return u[static_cast<size_t>(i)]; }
};

/// Discretely orthonormal sine mode: e_k(x) = sqrt(2/length) sin(k pi x / length),
/// an eigenvector of the Dirichlet second-difference operator for k <= n.
State sine_mode(const Grid& g, int k);

/// k-th eigenvalue of the second-difference operator T = -Laplacian_h:
/// (2/h^2)(1 - cos(k pi h / length)).
double laplacian_eigenvalue(const Grid& g, int k);

/// Smallest eigenvalue of T computed numerically (inverse power iteration);
/// agrees with laplacian_eigenvalue(g, 1) to high accuracy and serves as the
/// independent cross-check of the discrete embedding constant.
double min_rayleigh_quotient(const Grid& g);

/// Discrete L2 quantities (weight h).
double l2_norm_sq(const State& s);
double l2_inner(const State& a, const State& b);

/// Discrete H^-1 quantities: <T^{-1} u, v> with weight h.
double hminus1_inner(const State& a, const State& b);
double hminus1_norm_sq(const State& s);

/// Solve T x = rhs with T the second-difference operator (Dirichlet).
State invert_laplacian(const State& rhs);

bool all_finite(const State& s);

} // namespace seelab
