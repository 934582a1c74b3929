#include "integrator.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "errors.hpp"
#include "tridiag.hpp"

namespace seelab {

namespace {

bool on_lattice(double t, double dt) {
    const double k = t / dt;
    return std::abs(k - std::llround(k)) * dt <= 1e-9 * std::max(1.0, std::abs(t));
}

double sup_norm(const State& s) {
    double m = 0.0;
    for (double v : s.u) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

void validate_sim(const SimConfig& sim, const ModelSpec& m, const Grid& g) {
    if (!(sim.dt > 0.0) || !std::isfinite(sim.dt))
        throw ValidationError("dt must be a positive finite number");
    if (!(sim.t_end > sim.t_start))
        throw ValidationError(fmt::format("time window is empty: t_start={} t_end={}",
                                          sim.t_start, sim.t_end));
    if (!on_lattice(sim.t_start, sim.dt) || !on_lattice(sim.t_end, sim.dt))
        throw ValidationError(fmt::format(
            "window endpoints must be multiples of dt (t_start={}, t_end={}, dt={}); "
            "the noise stream is addressed by absolute step index", sim.t_start,
            sim.t_end, sim.dt));
    if (sim.epsilon < 0.0 || sim.epsilon > 1.0)
        throw ValidationError(fmt::format("epsilon must lie in [0, 1], got {}", sim.epsilon));
    if (sim.record_every < 1)
        throw ValidationError("record_every must be >= 1");
    if (!(sim.blow_up_threshold > 0.0))
        throw ValidationError("blow_up_threshold must be positive");

    const double h = g.spacing();
    if (sim.scheme == Scheme::Explicit && m.kind == ModelKind::Laplacian &&
        sim.dt > 0.5 * h * h)
        throw ValidationError(fmt::format(
            "explicit step dt={} exceeds the Laplacian stability limit h^2/2={}; "
            "reduce dt or use the semi-implicit scheme", sim.dt, 0.5 * h * h));
    if (sim.scheme == Scheme::SemiImplicit && m.kind != ModelKind::Laplacian)
        throw ValidationError(
            "the semi-implicit scheme is available for the Laplacian drift only");
}

State em_step(const State& u, long long k, const ModelSpec& m,
              const NoiseSpec& noise, const ForcingProfile& profile,
              const SimConfig& sim, std::span<const double> dW,
              double* drift_ratio) {
    const double t = static_cast<double>(k) * sim.dt;
    const Grid& g = u.grid;

    // Explicit part of the drift: reaction plus forcing, plus A(u) unless the
    // scheme moves A to the implicit side.
    State expl(g);
    if (m.reaction.form != ReactionSpec::Form::Zero) {
        for (int i = 0; i < g.n; ++i)
            expl[i] += reaction_value(m.reaction, u[i]);
    }
    if (!profile.is_zero()) {
        const State gt = forcing_state(profile, g, t);
        for (int i = 0; i < g.n; ++i) expl[i] += gt[i];
    }
    const bool implicit_A = (sim.scheme == Scheme::SemiImplicit);
    if (!implicit_A) {
        const State a = apply_drift(u, m);
        for (int i = 0; i < g.n; ++i) expl[i] += a[i];
    }

    if (drift_ratio) {
        double num = 0.0;
        for (int i = 0; i < g.n; ++i) num = std::max(num, std::abs(expl[i]));
        *drift_ratio = sim.dt * num / (1.0 + sup_norm(u));
    }

    State next(g);
    for (int i = 0; i < g.n; ++i) next[i] = u[i] + sim.dt * expl[i];

    if (sim.epsilon > 0.0 && noise.kind != NoiseSpec::Kind::Zero) {
        const State gw = apply_diffusion(u, t, dW, noise);
        for (int i = 0; i < g.n; ++i) next[i] += sim.epsilon * gw[i];
    }

    if (implicit_A) {
        // (I + dt T) u_{k+1} = rhs with T the Dirichlet second-difference
        // operator; diag 1 + 2 dt/h^2, off-diagonal -dt/h^2.
        const double h = g.spacing();
        const double r = sim.dt / (h * h);
        std::vector<double> solved =
            solve_tridiag_const(1.0 + 2.0 * r, -r, std::span<const double>(next.u));
        next.u = std::move(solved);
    }
    return next;
}

Trajectory integrate_path(const State& u0, const ModelSpec& m,
                          const NoiseSpec& noise, const ForcingProfile& profile,
                          const SimConfig& sim, long long path_id) {
    validate_sim(sim, m, u0.grid);
    if (profile.norm_sq_mode)
        throw ValidationError(
            "forcing is declared by its norm only; simulation needs a separable shape");

    const long long k0 = std::llround(sim.t_start / sim.dt);
    const long long steps = std::llround((sim.t_end - sim.t_start) / sim.dt);

    Trajectory traj;
    traj.steps = steps;
    auto record = [&](long long j, const State& u) {
        traj.times.push_back((static_cast<double>(k0 + j)) * sim.dt);
        traj.h_norm_sq.push_back(h_norm_sq(u, m.triple));
        if (sim.record_states) traj.states.push_back(u);
    };

    State u = u0;
    record(0, u);
    std::vector<double> dW(static_cast<size_t>(noise.modes), 0.0);
    for (long long j = 0; j < steps; ++j) {
        const long long k = k0 + j;
        if (sim.epsilon > 0.0 && noise.kind != NoiseSpec::Kind::Zero)
            wiener_step(noise, path_id, k, sim.dt, dW);
        double ratio = 0.0;
        u = em_step(u, k, m, noise, profile, sim, dW, &ratio);
        traj.max_drift_ratio = std::max(traj.max_drift_ratio, ratio);

        if (!all_finite(u) || sup_norm(u) > sim.blow_up_threshold) {
            const double t = static_cast<double>(k + 1) * sim.dt;
            throw BlowUpError(
                fmt::format("trajectory blew up at t={} (step {} of path {}); "
                            "likely an unstable explicit step for this drift",
                            t, k + 1, path_id),
                k + 1, t, path_id);
        }
        if ((j + 1) % sim.record_every == 0 || j + 1 == steps) record(j + 1, u);
    }
    return traj;
}

} // namespace seelab
