#include "estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <functional>
#include <limits>
#include <thread>

#include "errors.hpp"
#include "rng.hpp"

namespace seelab {

namespace {

/// Lattice indices integrate_path records: 0, multiples of record_every,
/// and the final step.
std::vector<long long> record_indices(long long steps, long long record_every) {
    std::vector<long long> idx{0};
    for (long long j = record_every; j < steps; j += record_every) idx.push_back(j);
    if (steps >= 1) idx.push_back(steps);
    return idx;
}

/// Run fn(0..paths-1) on up to `threads` workers pulling from a shared
/// counter.  Results must go to per-path slots; the first failing path in
/// path order is rethrown after everything joins, so the reported error does
/// not depend on scheduling.
void run_paths(long long paths, int threads, const std::function<void(long long)>& fn) {
    int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    n = static_cast<int>(std::min<long long>(n, paths));

    if (n <= 1) {
        for (long long p = 0; p < paths; ++p) fn(p);
        return;
    }

    std::vector<std::exception_ptr> errors(static_cast<size_t>(paths));
    std::atomic<long long> next{0};
    auto worker = [&] {
        for (;;) {
            const long long p = next.fetch_add(1);
            if (p >= paths) return;
            try {
                fn(p);
            } catch (...) {
                errors[static_cast<size_t>(p)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

State draw_initial(const InitialFamily& fam, const Grid& g, const TripleKind& triple,
                   std::uint64_t seed, long long path_id, double start_time) {
    const double rho = fam.rho(start_time);
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw ValidationError(fmt::format(
            "initial radius rho({}) = {} must be a nonnegative number", start_time, rho));

    const auto pid = static_cast<std::uint64_t>(path_id);
    State v(g);
    double target = rho;
    if (fam.sampling == InitialFamily::Sampling::Extreme) {
        v = sine_mode(g, 1);
    } else {
        for (int i = 0; i < g.n; ++i)
            v[i] = rng::standard_normal(seed, rng::Domain::InitialState, pid,
                                        static_cast<std::uint64_t>(i), 1);
        if (!fam.at_extreme_radius)
            target = rho * rng::uniform(seed, rng::Domain::InitialState, pid, 0, 2);
    }
    const double nrm = std::sqrt(h_norm_sq(v, triple));
    if (!(nrm > 0.0) || target == 0.0) return State(g);
    const double scale = target / nrm;
    for (int i = 0; i < g.n; ++i) v[i] *= scale;
    return v;
}

void validate(const ExperimentSpec& spec) {
    validate(spec.consts);
    validate(spec.noise);
    if (spec.paths < 2)
        throw ValidationError(fmt::format("paths must be >= 2 (got {})", spec.paths));
    if (spec.t_values.empty())
        throw ValidationError("t_values must hold at least one horizon");
    double prev = 0.0;
    for (double t : spec.t_values) {
        if (!(t > prev))
            throw ValidationError(fmt::format(
                "t_values must be positive and strictly increasing (offender: {})", t));
        prev = t;
    }
    const double decay = spec.consts.lambda * spec.consts.gamma5;
    if (!is_tempered_family(spec.initial_family.rho, decay))
        throw PreconditionError(fmt::format(
            "initial family is not tempered: e^({:.6g} tau) rho(tau)^2 does not "
            "vanish as tau -> -inf", decay));
    if (spec.certified) {
        const double eps0 = noise_threshold(spec.consts, spec.gap_mode);
        if (spec.cfg.epsilon > eps0)
            throw PreconditionError(fmt::format(
                "certified run requires intensity epsilon <= {:.6g}, got {:.6g}",
                eps0, spec.cfg.epsilon));
    }
}

MomentSeries estimate_mean_square(const ExperimentSpec& spec, double t) {
    validate(spec);
    if (!(t > 0.0) || !std::isfinite(t))
        throw ValidationError(fmt::format("horizon t must be positive (got {})", t));

    SimConfig cfg = spec.cfg;
    cfg.t_start = spec.tau - t;
    cfg.t_end = spec.tau;
    cfg.record_states = false;
    validate_sim(cfg, spec.model, spec.grid);

    const long long steps = std::llround((cfg.t_end - cfg.t_start) / cfg.dt);
    const long long k0 = std::llround(cfg.t_start / cfg.dt);
    const std::vector<long long> recs = record_indices(steps, cfg.record_every);
    const size_t nrec = recs.size();
    const auto paths = static_cast<size_t>(spec.paths);

    std::vector<double> vals(paths * nrec, 0.0);
    std::vector<double> ratios(paths, 0.0);

    run_paths(spec.paths, spec.threads, [&](long long p) {
        const State u0 = draw_initial(spec.initial_family, spec.grid, spec.model.triple,
                                      spec.noise.master_seed, p, cfg.t_start);
        const Trajectory tr =
            integrate_path(u0, spec.model, spec.noise, spec.profile, cfg, p);
        double* row = vals.data() + static_cast<size_t>(p) * nrec;
        for (size_t j = 0; j < nrec; ++j) row[j] = tr.h_norm_sq[j];
        ratios[static_cast<size_t>(p)] = tr.max_drift_ratio;
    });

    MomentSeries out;
    out.paths = spec.paths;
    out.times.resize(nrec);
    out.mean_sq.assign(nrec, 0.0);
    out.std_err.assign(nrec, 0.0);
    for (size_t j = 0; j < nrec; ++j)
        out.times[j] = static_cast<double>(k0 + recs[j]) * cfg.dt;

    // Path-ordered reduction: bitwise identical for every worker count.
    for (size_t j = 0; j < nrec; ++j) {
        double sum = 0.0;
        for (size_t p = 0; p < paths; ++p) sum += vals[p * nrec + j];
        out.mean_sq[j] = sum / static_cast<double>(paths);
    }
    if (spec.paths >= 2) {
        for (size_t j = 0; j < nrec; ++j) {
            double ss = 0.0;
            for (size_t p = 0; p < paths; ++p) {
                const double d = vals[p * nrec + j] - out.mean_sq[j];
                ss += d * d;
            }
            const double var = ss / static_cast<double>(paths - 1);
            out.std_err[j] = std::sqrt(var / static_cast<double>(paths));
        }
    }
    for (double r : ratios) out.max_drift_ratio = std::max(out.max_drift_ratio, r);
    return out;
}

AbsorptionReport pullback_absorption(const ExperimentSpec& spec, double quad_tol) {
    validate(spec);
    const double decay = spec.consts.lambda * spec.consts.gamma5;
    const GronwallConstants gk = derived_gronwall_constants(spec.consts, spec.gap_mode);

    AbsorptionReport rep;
    rep.tau = spec.tau;
    rep.derived_L = gk.L;
    rep.radius =
        absorbing_radius(spec.tau, gk.L, spec.profile, decay, spec.consts.alpha, quad_tol);

    // Definition-style worst case: every path starts on the sphere of radius
    // rho(tau - t), whatever the family's sampling law draws inside the ball.
    ExperimentSpec pinned = spec;
    pinned.initial_family.at_extreme_radius = true;

    for (double t : spec.t_values) {
        const MomentSeries s = estimate_mean_square(pinned, t);
        AbsorptionEntry e;
        e.t = t;
        e.mean_sq = s.mean_sq.back();
        e.std_err = s.std_err.back();
        e.absorbed = e.mean_sq <= rep.radius + 3.0 * e.std_err;
        rep.entries.push_back(e);
        rep.max_drift_ratio = std::max(rep.max_drift_ratio, s.max_drift_ratio);
    }

    for (auto it = rep.entries.rbegin(); it != rep.entries.rend(); ++it) {
        if (!it->absorbed) break;
        rep.entry_time = it->t;
    }
    return rep;
}

double gronwall_rhs(const GronwallConstants& k, const ForcingProfile& profile,
                    double alpha, double t) {
    const double beta = alpha / (alpha - 1.0);
    return k.C0 + k.Cg * profile.g_norm_sq(t) +
           k.Ch2 * std::pow(std::abs(profile.h2(t)), beta) +
           k.Ch1 * std::abs(profile.h1(t));
}

ResidualReport gronwall_residual(const MomentSeries& s, const StructuralConstants& c,
                                 const GronwallConstants& k, const ForcingProfile& profile) {
    const size_t n = s.times.size();
    if (n < 3 || s.mean_sq.size() != n || s.std_err.size() != n)
        throw ValidationError("residual check needs an aligned series with >= 3 points");

    const double decay = c.lambda * c.gamma5;
    ResidualReport rep;
    rep.worst_excess = -std::numeric_limits<double>::infinity();

    for (size_t i = 1; i + 1 < n; ++i) {
        const double hm = s.times[i] - s.times[i - 1];
        const double hp = s.times[i + 1] - s.times[i];
        // Three-point derivative weights, exact for quadratics; plain central
        // difference when the spacing is uniform.
        const double wm = -hp / (hm * (hm + hp));
        const double w0 = (hp - hm) / (hm * hp);
        const double wp = hm / (hp * (hm + hp));

        const double ddr =
            wm * s.mean_sq[i - 1] + w0 * s.mean_sq[i] + wp * s.mean_sq[i + 1];
        const double lhs = ddr + decay * s.mean_sq[i];
        const double rhs = gronwall_rhs(k, profile, c.alpha, s.times[i]);

        const double sig = std::sqrt(
            wm * wm * s.std_err[i - 1] * s.std_err[i - 1] +
            (w0 + decay) * (w0 + decay) * s.std_err[i] * s.std_err[i] +
            wp * wp * s.std_err[i + 1] * s.std_err[i + 1]);
        const double band =
            3.0 * sig + 1e-9 * (1.0 + std::abs(rhs) + decay * std::abs(s.mean_sq[i]));

        const double excess = lhs - rhs - band;
        rep.points += 1;
        if (excess > 0.0) rep.violations += 1;
        rep.worst_excess = std::max(rep.worst_excess, excess);
    }
    if (rep.points == 0) rep.worst_excess = 0.0;
    return rep;
}

DecayFit decay_rate_fit(const MomentSeries& s, double t_lo, double t_hi) {
    if (!(t_hi > t_lo))
        throw ValidationError(fmt::format("decay window is empty: [{}, {}]", t_lo, t_hi));

    std::vector<double> xs;
    std::vector<double> ys;
    for (size_t i = 0; i < s.times.size(); ++i) {
        if (s.times[i] < t_lo - 1e-12 || s.times[i] > t_hi + 1e-12) continue;
        if (!(s.mean_sq[i] > 0.0))
            throw ValidationError(fmt::format(
                "decay fit needs strictly positive values; mean_sq at t={} is {}",
                s.times[i], s.mean_sq[i]));
        xs.push_back(s.times[i]);
        ys.push_back(std::log(s.mean_sq[i]));
    }
    if (xs.size() < 2)
        throw ValidationError("decay fit window holds fewer than two records");

    const auto m = static_cast<double>(xs.size());
    double xbar = 0.0;
    double ybar = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= m;
    ybar /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - xbar;
        const double dy = ys[i] - ybar;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    DecayFit fit;
    fit.points = static_cast<long long>(xs.size());
    fit.rate = sxy / sxx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

double certify_lambda_hat(const Grid& g, double p, long long samples,
                          std::uint64_t seed) {
    if (!(p >= 2.0))
        throw ValidationError(fmt::format("exponent p must be >= 2 (got {})", p));
    if (samples < 1)
        throw ValidationError(fmt::format("samples must be >= 1 (got {})", samples));

    const double h = g.spacing();
    auto ratio = [&](const State& v) {
        double lp = 0.0;
        for (int i = 0; i < g.n; ++i) lp += std::pow(std::abs(v[i]), p);
        lp *= h;
        return std::pow(lp, 2.0 / p) / hminus1_norm_sq(v);
    };

    // e_1 comes first: for p = 2 it is the exact minimizer, so the sampled
    // minimum equals the smallest second-difference eigenvalue.
    double best = ratio(sine_mode(g, 1));
    for (long long sidx = 1; sidx < samples; ++sidx) {
        const auto su = static_cast<std::uint64_t>(sidx);
        State v(g);
        switch (sidx % 3) {
        case 0: { // spike at a rotating node
            const int i = static_cast<int>(su % static_cast<std::uint64_t>(g.n));
            v[i] = 1.0 + rng::uniform(seed, rng::Domain::DualPool, su, 0, 0);
            break;
        }
        case 1: // Gaussian nodal vector
            for (int i = 0; i < g.n; ++i)
                v[i] = rng::standard_normal(seed, rng::Domain::DualPool, su,
                                            static_cast<std::uint64_t>(i), 1);
            break;
        default: { // low-frequency combination
            const int modes = std::min(4, g.n);
            for (int kk = 1; kk <= modes; ++kk) {
                const double a = rng::standard_normal(seed, rng::Domain::DualPool, su,
                                                      static_cast<std::uint64_t>(kk), 2);
                const State e = sine_mode(g, kk);
                for (int i = 0; i < g.n; ++i) v[i] += a * e[i];
            }
            break;
        }
        }
        double amp = 0.0;
        for (int i = 0; i < g.n; ++i) amp = std::max(amp, std::abs(v[i]));
        if (amp == 0.0) continue;
        best = std::min(best, ratio(v));
    }
    return best;
}

} // namespace seelab
