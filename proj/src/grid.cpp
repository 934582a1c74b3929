#include "grid.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "errors.hpp"
#include "tridiag.hpp"

namespace seelab {

Grid Grid::make(int n, double length) {
    if (n < 1)
        throw ValidationError(fmt::format("grid needs at least 1 interior node (got {})", n));
    if (!(length > 0.0) || !std::isfinite(length))
        throw ValidationError(fmt::format("grid length must be positive (got {})", length));
    return Grid{n, length};
}

State::State(const Grid& g, std::vector<double> values) : grid(g), u(std::move(values)) {
    if (u.size() != static_cast<size_t>(g.n))
        throw ValidationError(fmt::format("state has {} values for a grid of {} nodes",
                                          u.size(), g.n));
}

State sine_mode(const Grid& g, int k) {
    if (k < 1)
        throw ValidationError(fmt::format("sine mode index must be >= 1 (got {})", k));
    State s(g);
    const double scale = std::sqrt(2.0 / g.length);
    for (int i = 0; i < g.n; ++i)
        s[i] = scale * std::sin(k * std::numbers::pi * g.node(i) / g.length);
    return s;
}

double laplacian_eigenvalue(const Grid& g, int k) {
    const double h = g.spacing();
    return 2.0 / (h * h) * (1.0 - std::cos(k * std::numbers::pi * h / g.length));
}

double l2_norm_sq(const State& s) {
    double acc = 0.0;
    for (double v : s.u) acc += v * v;
    return s.grid.spacing() * acc;
}

double l2_inner(const State& a, const State& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.u.size(); ++i) acc += a.u[i] * b.u[i];
    return a.grid.spacing() * acc;
}

State invert_laplacian(const State& rhs) {
    const double h = rhs.grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    return State(rhs.grid, solve_tridiag_const(2.0 * inv_h2, -inv_h2, rhs.u));
}

double hminus1_inner(const State& a, const State& b) {
    return l2_inner(invert_laplacian(a), b);
}

double hminus1_norm_sq(const State& s) { return hminus1_inner(s, s); }

double min_rayleigh_quotient(const Grid& g) {
    // Inverse power iteration on T; the spectral gap lambda2/lambda1 ~ 4
    // makes convergence fast.  Deterministic start vector.
    State x(g);
    for (int i = 0; i < g.n; ++i) x[i] = 1.0 + 0.5 * std::sin(i + 1.0);
    double rq = 0.0;
    for (int iter = 0; iter < 128; ++iter) {
        State y = invert_laplacian(x);
        const double norm = std::sqrt(l2_norm_sq(y));
        for (double& v : y.u) v /= norm;
        const double prev = rq;
        // Rayleigh quotient <T y, y> / <y, y> via <x_prev-ish>: recompute directly.
        // T y is cheap: second differences.
        const double h = g.spacing();
        double num = 0.0;
        for (int i = 0; i < g.n; ++i) {
            const double left = (i > 0) ? y[i - 1] : 0.0;
            const double right = (i + 1 < g.n) ? y[i + 1] : 0.0;
            num += y[i] * (2.0 * y[i] - left - right) / (h * h);
        }
        rq = num * h / l2_norm_sq(y);
        x = y;
        if (iter > 4 && std::abs(rq - prev) <= 1e-14 * rq) break;
    }
    return rq;
}

bool all_finite(const State& s) {
    for (double v : s.u)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace seelab
