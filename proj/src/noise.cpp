#include "noise.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "errors.hpp"
#include "rng.hpp"

namespace seelab {

NoiseSpec NoiseSpec::zero() {
    NoiseSpec n;
    n.kind = Kind::Zero;
    n.modes = 1;
    n.sigma = {0.0};
    return n;
}

NoiseSpec NoiseSpec::make(Kind kind, int modes, double base, double decay,
                          std::uint64_t seed) {
    NoiseSpec n;
    n.kind = kind;
    n.modes = modes;
    n.master_seed = seed;
    n.sigma.resize(static_cast<size_t>(modes));
    for (int k = 1; k <= modes; ++k)
        n.sigma[static_cast<size_t>(k - 1)] =
            base * std::pow(static_cast<double>(k), -decay);
    validate(n);
    return n;
}

void validate(const NoiseSpec& n) {
    if (n.modes < 1)
        throw ValidationError(fmt::format("noise needs at least 1 mode (got {})", n.modes));
    if (n.sigma.size() < static_cast<size_t>(n.modes))
        throw ValidationError(fmt::format("noise has {} amplitudes for {} modes",
                                          n.sigma.size(), n.modes));
    for (double s : n.sigma)
        if (!std::isfinite(s))
            throw ValidationError("noise amplitudes must be finite");
}

void wiener_step(const NoiseSpec& n, long long path_id, long long step_index,
                 double dt, std::span<double> out) {
    const double scale = std::sqrt(dt);
    for (int k = 0; k < n.modes; ++k) {
        out[static_cast<size_t>(k)] =
            scale * rng::standard_normal(n.master_seed, rng::Domain::Wiener,
                                         static_cast<std::uint64_t>(path_id),
                                         static_cast<std::uint64_t>(step_index),
                                         static_cast<std::uint64_t>(k));
    }
}

std::vector<std::vector<double>> wiener_increments(const NoiseSpec& n, double t0,
                                                   double dt, long long steps,
                                                   long long path_id) {
    validate(n);
    if (!(dt > 0.0))
        throw ValidationError(fmt::format("dt must be positive (got {})", dt));
    if (steps < 0)
        throw ValidationError(fmt::format("step count must be nonnegative (got {})", steps));
    if (steps > (1ll << 32) || static_cast<unsigned long long>(steps) *
                                      static_cast<unsigned long long>(n.modes) >
                                  (1ull << 34))
        throw ValidationError(fmt::format(
            "increment table of {} steps x {} modes exceeds the size limit",
            steps, n.modes));

    const long long k0 = std::llround(t0 / dt);
    std::vector<std::vector<double>> out(static_cast<size_t>(steps));
    for (long long j = 0; j < steps; ++j) {
        auto& row = out[static_cast<size_t>(j)];
        row.resize(static_cast<size_t>(n.modes));
        wiener_step(n, path_id, k0 + j, dt, row);
    }
    return out;
}

State apply_diffusion(const State& u, double t, std::span<const double> dW,
                      const NoiseSpec& n) {
    (void)t; // the catalog entries are autonomous in t
    State out(u.grid);
    switch (n.kind) {
    case NoiseSpec::Kind::Zero:
        return out;
    case NoiseSpec::Kind::ScalarMultiplicative: {
        const double f = n.sigma_at(0) * dW[0];
        for (int i = 0; i < u.size(); ++i) out[i] = f * u[i];
        return out;
    }
    case NoiseSpec::Kind::DiagonalNemytskii: {
        double f = 0.0;
        for (int k = 0; k < n.modes; ++k) f += n.sigma_at(k) * dW[static_cast<size_t>(k)];
        for (int i = 0; i < u.size(); ++i) out[i] = f * std::tanh(u[i]);
        return out;
    }
    case NoiseSpec::Kind::Additive: {
        for (int k = 0; k < n.modes; ++k) {
            const double f = n.sigma_at(k) * dW[static_cast<size_t>(k)];
            if (f == 0.0) continue;
            const State ek = sine_mode(u.grid, k + 1);
            for (int i = 0; i < u.size(); ++i) out[i] += f * ek[i];
        }
        return out;
    }
    }
    return out;
}

double hs_norm_sq(const State& u, double t, const NoiseSpec& n, const TripleKind& triple) {
    (void)t;
    switch (n.kind) {
    case NoiseSpec::Kind::Zero:
        return 0.0;
    case NoiseSpec::Kind::ScalarMultiplicative: {
        const double s = n.sigma_at(0);
        return s * s * h_norm_sq(u, triple);
    }
    case NoiseSpec::Kind::DiagonalNemytskii: {
        double ssum = 0.0;
        for (int k = 0; k < n.modes; ++k) ssum += n.sigma_at(k) * n.sigma_at(k);
        State b(u.grid);
        for (int i = 0; i < u.size(); ++i) b[i] = std::tanh(u[i]);
        return ssum * h_norm_sq(b, triple);
    }
    case NoiseSpec::Kind::Additive: {
        double acc = 0.0;
        for (int k = 0; k < n.modes; ++k) {
            const double s = n.sigma_at(k);
            if (s == 0.0) continue;
            acc += s * s * h_norm_sq(sine_mode(u.grid, k + 1), triple);
        }
        return acc;
    }
    }
    return 0.0;
}

BoundCheck check_diffusion_bound(const State& u, double t, const NoiseSpec& n,
                                 const StructuralConstants& c,
                                 const ForcingProfile& profile, const ModelSpec& m) {
    const double lhs = hs_norm_sq(u, t, n, m.triple);
    const double beta = c.alpha / (c.alpha - 1.0);
    const double rhs = c.gamma4 * h_norm_sq(u, m.triple) +
                       2.0 * c.gamma6 * v_norm_alpha(u, m) +
                       young_h2_constant(c.gamma5, c.alpha) *
                           std::pow(std::abs(profile.h2(t)), beta) +
                       profile.h1(t);
    const double margin = rhs - lhs;
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return {margin >= -1e-9 * scale, margin};
}

} // namespace seelab
