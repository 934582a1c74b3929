#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "constants.hpp"
#include "forcing.hpp"
#include "integrator.hpp"
#include "models.hpp"
#include "noise.hpp"

namespace seelab {

/// How initial data are drawn at the start time s of a run.
///   Extreme     the deterministic worst-case point rho(s) * e_1 / ||e_1||_H
///   UniformBall random direction, radius rho(s) * U with U uniform in (0,1)
/// rho is a parametric radius map so temperedness can be decided analytically.
struct InitialFamily {
    enum class Sampling { Extreme, UniformBall };

    Sampling sampling = Sampling::Extreme;
    ScalarSignal rho = ScalarSignal::constant(1.0);
    bool at_extreme_radius = false; ///< pin |u0|_H = rho(s) regardless of law
};

State draw_initial(const InitialFamily& fam, const Grid& g, const TripleKind& triple,
                   std::uint64_t seed, long long path_id, double start_time);

/// A pullback experiment: fixed target time tau, horizons t (each run covers
/// [tau - t, tau]), a tempered family of initial balls, and the shared
/// model/noise/forcing/stepping data.  One path is one work unit; ensemble
/// statistics are merged in path order, so results are identical for any
/// worker count.
struct ExperimentSpec {
    double tau = 0.0;
    std::vector<double> t_values;
    long long paths = 2;
    InitialFamily initial_family;
    Grid grid;
    ModelSpec model;
    NoiseSpec noise;
    ForcingProfile profile;
    SimConfig cfg; ///< window endpoints are overwritten per run
    StructuralConstants consts;
    GapMode gap_mode = GapMode::Abstract;
    bool certified = true; ///< enforce cfg.epsilon <= noise_threshold(consts, gap_mode)
    int threads = 0;       ///< 0 = hardware concurrency
};

/// Checks t_values (positive, strictly increasing), paths >= 2, temperedness
/// of the radius map at decay rate lambda*gamma5 (PreconditionError), and the
/// certified intensity bound (PreconditionError).
void validate(const ExperimentSpec& spec);

/// Ensemble second-moment series E||u(r)||_H^2 with standard errors.
struct MomentSeries {
    std::vector<double> times;
    std::vector<double> mean_sq;
    std::vector<double> std_err; ///< sample std / sqrt(paths)
    long long paths = 0;
    double max_drift_ratio = 0.0;
};

/// Integrate spec.paths independent paths over [tau - t, tau] and reduce.
/// Deterministic for a fixed master seed: per-path values are pure functions
/// of (seed, path_id) and the reduction runs in path order.
MomentSeries estimate_mean_square(const ExperimentSpec& spec, double t);

struct AbsorptionEntry {
    double t = 0.0;
    double mean_sq = 0.0; ///< terminal E||u(tau)||_H^2
    double std_err = 0.0;
    bool absorbed = false; ///< mean_sq <= radius + 3 std_err
};

struct AbsorptionReport {
    double tau = 0.0;
    double radius = 0.0;    ///< R(tau), bound on E||u(tau)||_H^2
    double derived_L = 0.0; ///< scale used inside R
    std::vector<AbsorptionEntry> entries;
    std::optional<double> entry_time; ///< smallest t absorbed with all larger t absorbed
    double max_drift_ratio = 0.0;

    bool absorbed() const { return entry_time.has_value(); }
};

/// For each horizon t, start every path on the sphere of radius rho(tau - t)
/// (worst case of the ball family) and compare the terminal second moment
/// against the absorbing radius.  quad_tol is the absolute accuracy of the
/// tempered forcing integral inside R(tau).
AbsorptionReport pullback_absorption(const ExperimentSpec& spec, double quad_tol = 1e-10);

/// Right side of the second-moment inequality at time t:
/// C0 + Cg ||g(t)||_H^2 + Ch2 |h2(t)|^{alpha/(alpha-1)} + Ch1 |h1(t)|.
double gronwall_rhs(const GronwallConstants& k, const ForcingProfile& profile,
                    double alpha, double t);

struct ResidualReport {
    long long points = 0;       ///< interior time points tested
    long long violations = 0;   ///< residual above its 3-sigma band
    double worst_excess = 0.0;  ///< max of residual - band (negative: all inside)

    double fraction() const {
        return points > 0 ? static_cast<double>(violations) / static_cast<double>(points) : 0.0;
    }
};

/// Test d/dr mean_sq + lambda*gamma5 * mean_sq <= rhs(r) pointwise, with the
/// derivative from three-point differences (central on uniform spacing) and
/// the band propagated from the standard errors.
ResidualReport gronwall_residual(const MomentSeries& s, const StructuralConstants& c,
                                 const GronwallConstants& k, const ForcingProfile& profile);

struct DecayFit {
    double rate = 0.0;      ///< slope of log mean_sq vs time (negative = decay)
    double r_squared = 1.0;
    long long points = 0;
};

/// Least-squares line through (t, log mean_sq) for records with t in
/// [t_lo, t_hi].  Throws ValidationError when fewer than two points fall in
/// the window or any selected value is nonpositive.
DecayFit decay_rate_fit(const MomentSeries& s, double t_lo, double t_hi);

/// Certified-on-samples lower bound for the embedding ratio
/// ||v||_{Lp,h}^2 / ||v||_{H^-1,h}^2: minimum over e_1 plus a deterministic
/// mixture of Gaussian, low-frequency and spike vectors.  For p = 2 the
/// minimum is attained by e_1 and equals the smallest eigenvalue of the
/// second-difference operator.
double certify_lambda_hat(const Grid& g, double p, long long samples,
                          std::uint64_t seed);

} // namespace seelab
