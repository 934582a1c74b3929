#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grid.hpp"

namespace seelab {

/// Parametric scalar function of time with a known decay class, so that
/// tail integrals over (-inf, T] admit analytic bounds.
///
/// Forms (value c, rate r, degree d, support [lo, hi]):
///   Zero           f(t) = 0
///   Constant       f(t) = c
///   Exponential    f(t) = c e^{r t}
///   Polynomial     f(t) = c (1 + |t|)^d,  d >= 0
///   CompactSupport f(t) = c on [lo, hi], else 0
///   Table          piecewise-linear through (time, value) points, 0 outside
struct ScalarSignal {
    enum class Form { Zero, Constant, Exponential, Polynomial, CompactSupport, Table };

    Form form = Form::Zero;
    double value = 0.0;
    double rate = 0.0;
    double degree = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::pair<double, double>> table;

    double operator()(double t) const;

    static ScalarSignal zero() { return {}; }
    static ScalarSignal constant(double c);
    static ScalarSignal exponential(double c, double r);
    static ScalarSignal polynomial(double c, double d);
    static ScalarSignal compact(double c, double lo, double hi);
    static ScalarSignal from_table(std::vector<std::pair<double, double>> pts);
    /// Rows "time,value"; '#' comments allowed.  Throws ValidationError.
    static ScalarSignal from_csv(const std::string& path);
};

/// Upper bound for int_{-inf}^{T} e^{decay s} |f(s)|^q ds.
/// Throws DivergenceError when the integral is infinite for this form.
double signal_tail_bound(const ScalarSignal& f, double T, double decay, double q);

/// Largest time below which the signal vanishes identically (compact forms),
/// or nullopt for forms with unbounded support.
std::optional<double> signal_support_lower(const ScalarSignal& f);

/// Time-dependent data of the evolution equation.  The deterministic forcing
/// g enters the dynamics; h1 and h2 only enter the structural bounds (H3),
/// (H4) and the absorbing-radius integral.
///
/// g is either separable, g(t, x) = envelope(t) * shape(x) with
/// shape_norm_sq = ||shape||_H^2, or declared directly through its squared
/// H-norm (norm_sq_mode): then simulation is unavailable but every scalar
/// bound still works.
struct ForcingProfile {
    enum class Shape { Zero, Uniform, FirstMode };

    ScalarSignal g;              ///< envelope, or ||g(t)||_H^2 in norm_sq_mode
    bool norm_sq_mode = false;
    Shape shape = Shape::Zero;
    double shape_norm_sq = 0.0;  ///< ||shape||_H^2 on the working grid
    ScalarSignal h1;
    ScalarSignal h2;
    std::optional<double> closed_form_tail; ///< reference value for tests

    double g_norm_sq(double t) const;
    bool is_zero() const;

    static ForcingProfile zero();
};

/// Nodal values of g(t, .) on a grid.  Throws ValidationError in norm_sq_mode
/// (no spatial information available).
State forcing_state(const ForcingProfile& p, const Grid& g, double t);

/// ||shape||_H^2 for the profile's shape on the given grid (L2 weight h).
double shape_norm_sq_on_grid(ForcingProfile::Shape shape, const Grid& g);

/// I(tau) = int_{-inf}^{tau} e^{decay s} (||g(s)||_H^2 + |h1(s)| +
/// |h2(s)|^{alpha/(alpha-1)}) ds to absolute accuracy tol: analytic tail
/// truncation plus adaptive Simpson on the remaining window.
double tempered_integral(const ForcingProfile& p, double tau, double decay,
                         double alpha, double tol);

/// R(tau) = L + L e^{-decay tau} I(tau).
double absorbing_radius(double tau, double L, const ForcingProfile& p,
                        double decay, double alpha, double tol);

/// Whether e^{decay tau} rho(tau)^2 -> 0 as tau -> -inf for a parametric
/// radius function rho.  Supported forms: Zero, Constant, Polynomial,
/// Exponential, CompactSupport; Table is rejected.
bool is_tempered_family(const ScalarSignal& rho, double decay);

} // namespace seelab
