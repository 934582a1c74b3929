#include "hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rng.hpp"

namespace seelab {

namespace {

constexpr double kRelTol = 1e-9;

bool record(CheckReport& rep, double margin, double scale) {
    rep.trials += 1;
    const double tol = kRelTol * std::max(1.0, scale);
    const bool ok = margin >= -tol;
    if (!ok) rep.violations += 1;
    if (rep.trials == 1 || margin < rep.worst_margin) rep.worst_margin = margin;
    return ok;
}

double sample_time(std::uint64_t seed, std::uint64_t trial, std::uint64_t slot) {
    return -2.0 + 4.0 * rng::uniform(seed, rng::Domain::Hypothesis, trial, slot, 0x7fff);
}

} // namespace

State sample_mixture(const Grid& g, std::uint64_t seed, std::uint64_t trial,
                     std::uint64_t slot) {
    State s(g);
    const int kind = static_cast<int>(trial % 3);
    if (kind == 1) {
        // smooth: random combination of the first four sine modes
        for (int k = 1; k <= 4; ++k) {
            const double a = rng::standard_normal(seed, rng::Domain::Hypothesis, trial,
                                                  slot, 1000 + static_cast<std::uint64_t>(k));
            const State ek = sine_mode(g, std::min(k, g.n));
            for (int i = 0; i < g.n; ++i) s[i] += a * ek[i];
        }
        return s;
    }
    const double amp = (kind == 2) ? 50.0 : 1.0;
    for (int i = 0; i < g.n; ++i)
        s[i] = amp * rng::standard_normal(seed, rng::Domain::Hypothesis, trial, slot,
                                          static_cast<std::uint64_t>(i));
    return s;
}

CheckReport check_H0(const ModelSpec& m, const Grid& g, long long trials,
                     std::uint64_t seed) {
    CheckReport rep;
    double worst_ratio = 0.0;
    const ReactionSpec& r = m.reaction;
    for (long long i = 0; i < trials; ++i) {
        const auto t = static_cast<std::uint64_t>(i);
        const State a = sample_mixture(g, seed, t, 0);
        const State b = sample_mixture(g, seed, t, 1);
        State d(g), fd(g);
        for (int j = 0; j < g.n; ++j) {
            d[j] = a[j] - b[j];
            fd[j] = reaction_value(r, a[j]) - reaction_value(r, b[j]);
        }
        const double dn = std::sqrt(h_norm_sq(d, m.triple));
        const double fdn = std::sqrt(h_norm_sq(fd, m.triple));
        const double lip_margin = r.gamma1 * dn - fdn;
        if (dn > 0.0) worst_ratio = std::max(worst_ratio, fdn / dn);

        const State fa = apply_reaction(a, r);
        const double growth_margin =
            r.gamma2 * (1.0 + std::sqrt(h_norm_sq(a, m.triple))) -
            std::sqrt(h_norm_sq(fa, m.triple));

        record(rep, std::min(lip_margin, growth_margin),
               std::max(r.gamma1 * dn, r.gamma2 * (1.0 + dn)));
    }
    rep.aux = worst_ratio;
    return rep;
}

namespace {

double hs_diff_norm_sq(const State& v1, const State& v2, const NoiseSpec& n,
                       const TripleKind& triple) {
    switch (n.kind) {
    case NoiseSpec::Kind::Zero:
    case NoiseSpec::Kind::Additive:
        return 0.0;
    case NoiseSpec::Kind::ScalarMultiplicative: {
        State d(v1.grid);
        for (int i = 0; i < v1.size(); ++i) d[i] = v1[i] - v2[i];
        const double s = n.sigma_at(0);
        return s * s * h_norm_sq(d, triple);
    }
    case NoiseSpec::Kind::DiagonalNemytskii: {
        double ssum = 0.0;
        for (int k = 0; k < n.modes; ++k) ssum += n.sigma_at(k) * n.sigma_at(k);
        State d(v1.grid);
        for (int i = 0; i < v1.size(); ++i) d[i] = std::tanh(v1[i]) - std::tanh(v2[i]);
        return ssum * h_norm_sq(d, triple);
    }
    }
    return 0.0;
}

} // namespace

CheckReport check_H2(const ModelSpec& m, const Grid& g, const NoiseSpec& noise,
                     const StructuralConstants& c, long long trials,
                     std::uint64_t seed) {
    CheckReport rep;
    double min_gamma3 = 0.0;
    for (long long i = 0; i < trials; ++i) {
        const auto t = static_cast<std::uint64_t>(i);
        const State v1 = sample_mixture(g, seed, t, 2);
        const State v2 = sample_mixture(g, seed, t, 3);
        State d(g);
        for (int j = 0; j < g.n; ++j) d[j] = v1[j] - v2[j];
        const double dsq = h_norm_sq(d, m.triple);
        const double pair = drift_pairing(v1, d, m) - drift_pairing(v2, d, m);
        const double lhs = 2.0 * c.gamma1 * dsq + 2.0 * pair +
                           hs_diff_norm_sq(v1, v2, noise, m.triple);
        const double rhs = c.gamma3 * dsq;
        record(rep, rhs - lhs, std::max(std::abs(lhs), std::abs(rhs)));
        if (dsq > 1e-300) min_gamma3 = std::max(min_gamma3, lhs / dsq);
    }
    rep.aux = min_gamma3;
    return rep;
}

CheckReport check_H3(const ModelSpec& m, const Grid& g, const NoiseSpec& noise,
                     const StructuralConstants& c, const ForcingProfile& profile,
                     long long trials, std::uint64_t seed, bool zero_gamma4) {
    CheckReport rep;
    for (long long i = 0; i < trials; ++i) {
        const auto ti = static_cast<std::uint64_t>(i);
        const State v = sample_mixture(g, seed, ti, 4);
        const double t = sample_time(seed, ti, 5);
        // Drift-strict accounting sends the whole noise term through the
        // diffusion growth bound, so here only the drift is tested.
        const double lhs = 2.0 * drift_pairing(v, v, m) +
                           (zero_gamma4 ? 0.0 : hs_norm_sq(v, t, noise, m.triple));
        const double g4 = zero_gamma4 ? 0.0 : c.gamma4;
        const double rhs = g4 * h_norm_sq(v, m.triple) -
                           3.0 * c.gamma5 * v_norm_alpha(v, m) + profile.h1(t);
        record(rep, rhs - lhs, std::max(std::abs(lhs), std::abs(rhs)));
    }
    return rep;
}

CheckReport check_H4(const ModelSpec& m, const Grid& g,
                     const StructuralConstants& c, const ForcingProfile& profile,
                     long long trials, std::uint64_t seed, int pool_size) {
    CheckReport rep;
    // Fixed test pool: Gaussian / smooth / spike vectors, V-norms precomputed.
    std::vector<State> pool;
    std::vector<double> pool_vnorm;
    for (int j = 0; j < pool_size; ++j) {
        State w(g);
        const int kind = j % 3;
        if (kind == 2) {
            w[(7 * j) % g.n] = 1.0; // spike
        } else if (kind == 1) {
            for (int k = 1; k <= 4; ++k) {
                const double a = rng::standard_normal(seed, rng::Domain::DualPool,
                                                      static_cast<std::uint64_t>(j),
                                                      static_cast<std::uint64_t>(k), 0);
                const State ek = sine_mode(g, std::min(k, g.n));
                for (int i = 0; i < g.n; ++i) w[i] += a * ek[i];
            }
        } else {
            for (int i = 0; i < g.n; ++i)
                w[i] = rng::standard_normal(seed, rng::Domain::DualPool,
                                            static_cast<std::uint64_t>(j), 0,
                                            static_cast<std::uint64_t>(i));
        }
        const double vn = test_v_norm(w, m);
        if (vn > 1e-14) {
            pool.push_back(std::move(w));
            pool_vnorm.push_back(vn);
        }
    }

    double worst_ratio = 0.0;
    const double expo = (m.natural_alpha() - 1.0) / m.natural_alpha();
    for (long long i = 0; i < trials; ++i) {
        const auto ti = static_cast<std::uint64_t>(i);
        const State v = sample_mixture(g, seed, ti, 6);
        const double t = sample_time(seed, ti, 7);

        double dual_lb = 0.0;
        for (size_t j = 0; j < pool.size(); ++j)
            dual_lb = std::max(dual_lb, std::abs(drift_pairing(v, pool[j], m)) / pool_vnorm[j]);
        const double vn = test_v_norm(v, m);
        if (vn > 1e-14)
            dual_lb = std::max(dual_lb, std::abs(drift_pairing(v, v, m)) / vn);

        const double rhs = c.gamma6 * std::pow(v_norm_alpha(v, m), expo) +
                           std::abs(profile.h2(t));
        record(rep, rhs - dual_lb, std::max(std::abs(rhs), dual_lb));
        if (rhs > 0.0) worst_ratio = std::max(worst_ratio, dual_lb / rhs);
    }
    rep.aux = worst_ratio;
    return rep;
}

CheckReport check_h5_sampled(const ModelSpec& m, const Grid& g, const NoiseSpec& noise,
                             const StructuralConstants& c, const ForcingProfile& profile,
                             long long trials, std::uint64_t seed) {
    CheckReport rep;
    for (long long i = 0; i < trials; ++i) {
        const auto ti = static_cast<std::uint64_t>(i);
        const State v = sample_mixture(g, seed, ti, 8);
        const double t = sample_time(seed, ti, 9);
        const BoundCheck b = check_diffusion_bound(v, t, noise, c, profile, m);
        record(rep, b.margin, std::max(1.0, std::abs(b.margin)));
    }
    return rep;
}

CheckReport check_psi_bounds(const PsiParams& psi, double p, long long trials,
                             std::uint64_t seed) {
    CheckReport rep;
    for (long long i = 0; i < trials; ++i) {
        const auto ti = static_cast<std::uint64_t>(i);
        const double s = 100.0 * rng::standard_normal(seed, rng::Domain::Hypothesis, ti, 10, 0);
        const double r = 100.0 * rng::standard_normal(seed, rng::Domain::Hypothesis, ti, 10, 1);
        const double ps = psi_value(psi, p, s);
        const double pr = psi_value(psi, p, r);
        const double mono = (ps - pr) * (s - r);                  // (Psi2)
        const double low = s * ps - (psi.beta1 * std::pow(std::abs(s), p) - psi.beta2);
        const double high = psi.beta3 * std::pow(std::abs(s), p - 1.0) + psi.beta4 -
                            std::abs(ps);                          // (Psi4)
        const double margin = std::min({mono, low, high});
        record(rep, margin, std::pow(std::abs(s) + 1.0, p));
    }
    return rep;
}

} // namespace seelab
