#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include <fmt/format.h>

#include "errors.hpp"
#include "estimators.hpp"
#include "hypotheses.hpp"
#include "integrator.hpp"

namespace seelab {

namespace {

const char* command_name(Command c) {
    switch (c) {
    case Command::Check: return "check";
    case Command::Threshold: return "threshold";
    case Command::Radius: return "radius";
    case Command::Simulate: return "simulate";
    case Command::Absorb: return "absorb";
    case Command::Decay: return "decay";
    }
    return "?";
}

const char* gap_mode_name(GapMode m) {
    return m == GapMode::Abstract ? "abstract" : "drift_strict";
}

const char* scheme_name(Scheme s) {
    return s == Scheme::Explicit ? "explicit" : "semi_implicit";
}

std::string joined(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

json constants_json(const StructuralConstants& c) {
    json j;
    j["gamma1"] = jnum(c.gamma1);
    j["gamma2"] = jnum(c.gamma2);
    j["gamma3"] = jnum(c.gamma3);
    j["gamma4"] = jnum(c.gamma4);
    j["gamma5"] = jnum(c.gamma5);
    j["gamma6"] = jnum(c.gamma6);
    j["alpha"] = jnum(c.alpha);
    j["lambda"] = jnum(c.lambda);
    j["epsilon"] = jnum(c.epsilon);
    return j;
}

json gronwall_json(const GronwallConstants& k) {
    json j;
    j["mode"] = gap_mode_name(k.mode);
    j["kappa"] = jnum(k.kappa);
    j["denom"] = jnum(k.denom);
    j["bracket"] = jnum(k.bracket);
    j["eta1"] = jnum(k.eta1);
    j["eta2"] = jnum(k.eta2);
    j["C0"] = jnum(k.C0);
    j["Cg"] = jnum(k.Cg);
    j["Ch2"] = jnum(k.Ch2);
    j["Ch1"] = jnum(k.Ch1);
    j["C1"] = jnum(k.C1);
    j["C2"] = jnum(k.C2);
    j["L"] = jnum(k.L);
    return j;
}

/// Gap numerator of (H5) for the given accounting of the drift term.
double gap_numerator(const StructuralConstants& c, GapMode mode) {
    const double base = c.lambda * c.gamma5 - c.gamma2;
    return mode == GapMode::Abstract ? base - std::fabs(c.gamma4) : base;
}

json check_json(const char* name, const CheckReport& r) {
    json j;
    j["name"] = name;
    j["trials"] = r.trials;
    j["violations"] = r.violations;
    j["worst_margin"] = jnum(r.worst_margin);
    j["aux"] = jnum(r.aux);
    j["pass"] = r.pass();
    return j;
}

CommandResult cmd_threshold(const RunConfig& rc) {
    const StructuralConstants& c = rc.consts;
    const double active = noise_threshold(c, rc.gap_mode); // throws when gap <= 0

    CommandResult out;
    json& j = out.report;
    j["command"] = "threshold";
    j["gap_mode"] = gap_mode_name(rc.gap_mode);
    j["constants"] = constants_json(c);
    j["gap"] = json{{"abstract", jnum(gap_numerator(c, GapMode::Abstract))},
                    {"drift_strict", jnum(gap_numerator(c, GapMode::DriftStrict))}};
    j["threshold"] = jnum(active);
    for (GapMode m : {GapMode::Abstract, GapMode::DriftStrict}) {
        try {
            j["thresholds"][gap_mode_name(m)] = jnum(noise_threshold(c, m));
        } catch (const PreconditionError&) {
            j["thresholds"][gap_mode_name(m)] = nullptr;
        }
    }
    try {
        j["example"] = json{
            {"model", to_string(rc.example_kind())},
            {"threshold", jnum(example_noise_threshold(rc.example_kind(), c.lambda,
                                                       c.gamma2, rc.model.psi.beta1))}};
    } catch (const PreconditionError& e) {
        j["example"] = json{{"model", to_string(rc.example_kind())},
                            {"threshold", nullptr},
                            {"note", e.what()}};
    }
    out.summary = fmt::format("noise intensity threshold ({}) = {:.6g}",
                              gap_mode_name(rc.gap_mode), active);
    out.exit_code = 0;
    return out;
}

CommandResult cmd_check(const RunConfig& rc) {
    const StructuralConstants& c = rc.consts;
    const long long trials = rc.trials;
    const std::uint64_t seed = rc.seed;
    const bool strict = rc.gap_mode == GapMode::DriftStrict;

    const double gap = gap_numerator(c, rc.gap_mode);
    const bool gap_pass = gap > 0.0;

    std::vector<std::pair<const char*, CheckReport>> checks;
    checks.emplace_back("H0", check_H0(rc.model, rc.grid, trials, seed));
    checks.emplace_back("H2", check_H2(rc.model, rc.grid, rc.noise, c, trials, seed));
    checks.emplace_back("H3",
                        check_H3(rc.model, rc.grid, rc.noise, c, rc.profile, trials,
                                 seed, strict));
    checks.emplace_back("H4",
                        check_H4(rc.model, rc.grid, c, rc.profile, trials, seed));
    checks.emplace_back("h5", check_h5_sampled(rc.model, rc.grid, rc.noise, c,
                                               rc.profile, trials, seed));
    if (rc.model.kind == ModelKind::PorousMedium)
        checks.emplace_back("psi",
                            check_psi_bounds(rc.model.psi, rc.model.p, trials, seed));

    CommandResult out;
    json& j = out.report;
    j["command"] = "check";
    j["gap_mode"] = gap_mode_name(rc.gap_mode);
    j["trials"] = trials;
    j["seed"] = seed;
    j["constants"] = constants_json(c);
    j["gap"] = json{{"condition", strict ? "lambda*gamma5 - gamma2"
                                         : "lambda*gamma5 - gamma2 - |gamma4|"},
                    {"value", jnum(gap)},
                    {"pass", gap_pass}};
    j["checks"] = json::array();
    bool checks_pass = true;
    std::string failing;
    for (const auto& [name, r] : checks) {
        j["checks"].push_back(check_json(name, r));
        if (!r.pass()) {
            checks_pass = false;
            if (!failing.empty()) failing += ", ";
            failing += fmt::format("({}) {} of {}", name, r.violations, r.trials);
        }
    }
    const bool all_pass = gap_pass && checks_pass;
    j["pass"] = all_pass;

    if (all_pass) {
        out.summary = fmt::format(
            "all hypothesis checks passed ({} trials, gap {} = {:.6g})", trials,
            gap_mode_name(rc.gap_mode), gap);
    } else if (!gap_pass) {
        out.summary = fmt::format(
            "dissipativity gap (H5) violated: {} = {:.6g}, needs > 0",
            strict ? "lambda*gamma5 - gamma2" : "lambda*gamma5 - gamma2 - |gamma4|",
            gap);
    } else {
        out.summary = fmt::format("hypothesis violations: {}", failing);
    }
    out.exit_code = all_pass ? 0 : 1;
    return out;
}

CommandResult cmd_radius(const RunConfig& rc) {
    const StructuralConstants& c = rc.consts;
    const GronwallConstants k = derived_gronwall_constants(c, rc.gap_mode);
    const double decay = c.lambda * c.gamma5;
    const double tail = tempered_integral(rc.profile, rc.tau, decay, c.alpha,
                                          rc.quad_tol);
    const double radius = absorbing_radius(rc.tau, k.L, rc.profile, decay, c.alpha,
                                           rc.quad_tol);

    CommandResult out;
    json& j = out.report;
    j["command"] = "radius";
    j["tau"] = jnum(rc.tau);
    j["gap_mode"] = gap_mode_name(rc.gap_mode);
    j["constants"] = constants_json(c);
    j["gronwall"] = gronwall_json(k);
    j["decay_rate"] = jnum(decay);
    j["forcing_tail_integral"] = jnum(tail);
    j["radius"] = jnum(radius);
    out.summary = fmt::format(
        "absorbing radius R(tau = {:.6g}) = {:.6g} (scale L = {:.6g})", rc.tau,
        radius, k.L);
    out.exit_code = 0;
    return out;
}

CommandResult cmd_simulate(const RunConfig& rc, const std::string& out_dir) {
    SimConfig sim = rc.sim;
    sim.t_start = rc.tau - rc.horizon;
    sim.t_end = rc.tau;
    sim.record_states = rc.record_states;
    validate_sim(sim, rc.model, rc.grid);

    const State u0 = draw_initial(rc.family, rc.grid, rc.model.triple, rc.seed, 0,
                                  sim.t_start);
    const Trajectory tr = integrate_path(u0, rc.model, rc.noise, rc.profile, sim, 0);

    std::ostringstream csv;
    csv << "t,h_norm_sq\n";
    for (size_t i = 0; i < tr.times.size(); ++i)
        csv << csv_num(tr.times[i]) << ',' << csv_num(tr.h_norm_sq[i]) << '\n';
    const std::string traj_path = joined(out_dir, "trajectory.csv");
    write_text_file(traj_path, csv.str());

    CommandResult out;
    out.files.push_back(traj_path);
    if (sim.record_states) {
        std::ostringstream sc;
        sc << 't';
        for (int i = 0; i < rc.grid.n; ++i) sc << ",u" << i;
        sc << '\n';
        for (size_t r = 0; r < tr.states.size(); ++r) {
            sc << csv_num(tr.times[r]);
            for (int i = 0; i < rc.grid.n; ++i) sc << ',' << csv_num(tr.states[r][i]);
            sc << '\n';
        }
        const std::string states_path = joined(out_dir, "states.csv");
        write_text_file(states_path, sc.str());
        out.files.push_back(states_path);
    }

    json& j = out.report;
    j["command"] = "simulate";
    j["window"] = json{{"start", jnum(sim.t_start)},
                       {"end", jnum(sim.t_end)},
                       {"dt", jnum(sim.dt)},
                       {"scheme", scheme_name(sim.scheme)},
                       {"record_every", sim.record_every},
                       {"steps", tr.steps}};
    j["path_id"] = 0;
    j["epsilon"] = jnum(sim.epsilon);
    j["initial_norm_sq"] = jnum(tr.h_norm_sq.front());
    j["final_norm_sq"] = jnum(tr.h_norm_sq.back());
    j["max_drift_ratio"] = jnum(tr.max_drift_ratio);
    j["records"] = static_cast<long long>(tr.times.size());
    out.summary = fmt::format(
        "integrated [{:.6g}, {:.6g}] in {} steps: |u|_H^2 {:.6g} -> {:.6g}",
        sim.t_start, sim.t_end, tr.steps, tr.h_norm_sq.front(), tr.h_norm_sq.back());
    out.exit_code = 0;
    return out;
}

CommandResult cmd_absorb(const RunConfig& rc, const std::string& out_dir,
                         int threads) {
    const ExperimentSpec spec = rc.experiment(threads);
    const AbsorptionReport rep = pullback_absorption(spec, rc.quad_tol);

    std::ostringstream csv;
    csv << "t,mean_sq,std_err,absorbed\n";
    for (const AbsorptionEntry& e : rep.entries)
        csv << csv_num(e.t) << ',' << csv_num(e.mean_sq) << ',' << csv_num(e.std_err)
            << ',' << (e.absorbed ? 1 : 0) << '\n';
    const std::string entries_path = joined(out_dir, "entries.csv");
    write_text_file(entries_path, csv.str());

    CommandResult out;
    out.files.push_back(entries_path);
    json& j = out.report;
    j["command"] = "absorb";
    j["tau"] = jnum(rep.tau);
    j["gap_mode"] = gap_mode_name(rc.gap_mode);
    j["epsilon"] = jnum(rc.consts.epsilon);
    j["certified"] = rc.certified;
    j["paths"] = rc.paths;
    j["radius"] = jnum(rep.radius);
    j["derived_L"] = jnum(rep.derived_L);
    j["entries"] = json::array();
    for (const AbsorptionEntry& e : rep.entries)
        j["entries"].push_back(json{{"t", jnum(e.t)},
                                    {"mean_sq", jnum(e.mean_sq)},
                                    {"std_err", jnum(e.std_err)},
                                    {"absorbed", e.absorbed}});
    j["entry_time"] = rep.entry_time ? json(jnum(*rep.entry_time)) : json(nullptr);
    j["max_drift_ratio"] = jnum(rep.max_drift_ratio);
    j["absorbed"] = rep.absorbed();

    const AbsorptionEntry& last = rep.entries.back();
    if (rep.absorbed()) {
        out.summary = fmt::format(
            "absorbed from horizon t = {:.6g}: E|u(tau)|_H^2 = {:.6g} <= radius {:.6g}",
            *rep.entry_time, last.mean_sq, rep.radius);
        out.exit_code = 0;
    } else {
        out.summary = fmt::format(
            "not absorbed: E|u(tau)|_H^2 = {:.6g} at t = {:.6g} vs radius {:.6g}",
            last.mean_sq, last.t, rep.radius);
        out.exit_code = 1;
    }
    return out;
}

CommandResult cmd_decay(const RunConfig& rc, const std::string& out_dir,
                        int threads) {
    const ExperimentSpec spec = rc.experiment(threads);
    const MomentSeries s = estimate_mean_square(spec, rc.horizon);
    const GronwallConstants k = derived_gronwall_constants(rc.consts, rc.gap_mode);
    const ResidualReport res = gronwall_residual(s, rc.consts, k, rc.profile);
    const DecayFit fit = decay_rate_fit(s, rc.fit_lo, rc.fit_hi);

    const double target = -rc.consts.lambda * rc.consts.gamma5;
    const bool fast_enough = fit.rate <= 0.95 * target; // 5% slack on the rate

    std::ostringstream csv;
    csv << "t,mean_sq,std_err\n";
    for (size_t i = 0; i < s.times.size(); ++i)
        csv << csv_num(s.times[i]) << ',' << csv_num(s.mean_sq[i]) << ','
            << csv_num(s.std_err[i]) << '\n';
    const std::string series_path = joined(out_dir, "series.csv");
    write_text_file(series_path, csv.str());

    CommandResult out;
    out.files.push_back(series_path);
    json& j = out.report;
    j["command"] = "decay";
    j["tau"] = jnum(rc.tau);
    j["horizon"] = jnum(rc.horizon);
    j["paths"] = s.paths;
    j["gap_mode"] = gap_mode_name(rc.gap_mode);
    j["epsilon"] = jnum(rc.consts.epsilon);
    j["decay_rate_target"] = jnum(target);
    j["fit"] = json{{"rate", jnum(fit.rate)},
                    {"r_squared", jnum(fit.r_squared)},
                    {"points", fit.points},
                    {"window", json::array({jnum(rc.fit_lo), jnum(rc.fit_hi)})}};
    j["residual"] = json{{"points", res.points},
                         {"violations", res.violations},
                         {"worst_excess", jnum(res.worst_excess)},
                         {"fraction", jnum(res.fraction())}};
    j["max_drift_ratio"] = jnum(s.max_drift_ratio);
    j["pass"] = fast_enough;

    if (fast_enough) {
        out.summary = fmt::format(
            "mean-square decay rate {:.6g} meets target {:.6g} (r^2 = {:.6g})",
            fit.rate, target, fit.r_squared);
        out.exit_code = 0;
    } else {
        out.summary = fmt::format(
            "decay too slow: rate {:.6g} vs target {:.6g} (r^2 = {:.6g})", fit.rate,
            target, fit.r_squared);
        out.exit_code = 1;
    }
    return out;
}

} // namespace

CommandResult run_command(Command cmd, const RunConfig& rc,
                          const std::string& out_dir, int threads) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError(fmt::format("cannot create output directory '{}': {}", out_dir,
                                  ec.message()));

    CommandResult out;
    switch (cmd) {
    case Command::Check: out = cmd_check(rc); break;
    case Command::Threshold: out = cmd_threshold(rc); break;
    case Command::Radius: out = cmd_radius(rc); break;
    case Command::Simulate: out = cmd_simulate(rc, out_dir); break;
    case Command::Absorb: out = cmd_absorb(rc, out_dir, threads); break;
    case Command::Decay: out = cmd_decay(rc, out_dir, threads); break;
    }

    out.report["exit_code"] = out.exit_code;
    out.report["summary"] = out.summary;
    const std::string report_path =
        joined(out_dir, fmt::format("{}.json", command_name(cmd)));
    write_json_file(report_path, out.report);
    out.files.insert(out.files.begin(), report_path);
    return out;
}

} // namespace seelab
