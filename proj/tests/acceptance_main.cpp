// Acceptance gate.  Each criterion prints exactly one [PASS]/[FAIL] line with
// its measured numbers; the process exit code is the number of failures.
// Tolerances and runtime budgets are pinned next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "catalog.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "constants.hpp"
#include "estimators.hpp"
#include "forcing.hpp"
#include "grid.hpp"
#include "hypotheses.hpp"
#include "integrator.hpp"

using namespace seelab;

namespace {

int failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int index, const std::string& what, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", index, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Series captured by criteria 3 and 4, re-examined by criterion 6.
MomentSeries g_heat_series;
StructuralConstants g_heat_consts;
MomentSeries g_mode_series;
StructuralConstants g_mode_consts;

// ---------------------------------------------------------------------------

void criterion_thresholds() {
    const double tol = 1e-12;   // relative
    const double budget = 1e-3; // seconds for both evaluations

    const auto t0 = Clock::now();
    StructuralConstants c;
    c.lambda = 10.0;
    c.gamma2 = 1.0;
    c.gamma4 = 1.0;
    c.gamma5 = 1.0;
    c.gamma6 = 1.0;
    const double general = noise_threshold(c);
    const double rd = example_noise_threshold(ExampleModel::ReactionDiffusion, 2.0, 1.0);
    const double elapsed = seconds_since(t0);

    const double want_general = std::sqrt(8.0 / 41.0);
    const double want_rd = std::sqrt(1.0 / 30.0);
    const double rel_g = std::fabs(general - want_general) / want_general;
    const double rel_rd = std::fabs(rd - want_rd) / want_rd;
    const bool pass = rel_g <= tol && rel_rd <= tol && elapsed < budget;
    report(1, "closed-form noise intensity thresholds", pass,
           fmt::format("general {:.12g} (rel err {:.1e}), reaction-diffusion {:.12g} "
                       "(rel err {:.1e}), {:.2e} s",
                       general, rel_g, rd, rel_rd, elapsed));
}

void criterion_hypothesis_checks() {
    const long long trials = 10000;
    const double budget = 10.0; // seconds per model
    const Grid g = Grid::make(63, 1.0);

    struct Entry {
        const char* name;
        testing::CatalogSetup s;
    };
    const Entry models[] = {
        {"reaction-diffusion", testing::reaction_diffusion_setup(101)},
        {"power-law", testing::power_law_setup(102)},
        {"p-Laplace", testing::p_laplace_setup(103)},
        {"porous-medium", testing::porous_medium_setup(104)},
    };

    bool pass = true;
    std::string detail;
    for (const auto& [name, s] : models) {
        const auto t0 = Clock::now();
        const bool strict = s.gap_mode == GapMode::DriftStrict;
        long long violations = 0;
        violations += check_H2(s.model, g, s.noise, s.consts, trials, 7).violations;
        violations += check_H3(s.model, g, s.noise, s.consts, s.profile, trials, 7,
                               strict).violations;
        violations += check_H4(s.model, g, s.consts, s.profile, trials, 7).violations;
        violations += check_h5_sampled(s.model, g, s.noise, s.consts, s.profile,
                                       trials, 7).violations;
        const double elapsed = seconds_since(t0);
        if (violations != 0 || elapsed >= budget) pass = false;
        detail += fmt::format("{} {} violations {:.2f} s; ", name, violations, elapsed);
    }
    report(2, "sampled monotonicity/coercivity/growth checks, four models, 10^4 trials",
           pass, detail);
}

void criterion_heat_decay() {
    const double tol = 0.01;   // 1% relative error on the decay factor
    const double budget = 5.0; // seconds

    const auto t0 = Clock::now();
    const Grid g = Grid::make(127, 1.0);
    const auto m = make_model(ModelKind::Laplacian, 2.0, 1.0);
    SimConfig sim;
    sim.dt = 1e-4;
    sim.scheme = Scheme::SemiImplicit;
    sim.t_start = 0.0;
    sim.t_end = 0.1;
    sim.record_every = 50;
    const auto traj = integrate_path(sine_mode(g, 1), m, NoiseSpec::zero(),
                                     ForcingProfile::zero(), sim, 0);
    const double elapsed = seconds_since(t0);

    const double lam1 = laplacian_eigenvalue(g, 1);
    const double want = std::exp(-2.0 * lam1 * 0.1);
    const double got = traj.h_norm_sq.back() / traj.h_norm_sq.front();
    const double rel = std::fabs(got - want) / want;
    const bool pass = rel <= tol && elapsed < budget;

    g_heat_series.times = traj.times;
    g_heat_series.mean_sq = traj.h_norm_sq;
    g_heat_series.std_err.assign(traj.times.size(), 0.0);
    g_heat_series.paths = 1;
    g_heat_consts.gamma2 = 0.01;
    g_heat_consts.gamma5 = 2.0 / 3.0;
    g_heat_consts.gamma6 = 1.0;
    g_heat_consts.alpha = 2.0;
    g_heat_consts.lambda = 2.0;

    report(3, "deterministic heat decay vs the discrete eigenvalue (N=127, dt=1e-4)",
           pass,
           fmt::format("|u(0.1)|^2 factor {:.10g}, exact {:.10g}, rel err {:.2e}, "
                       "{:.2f} s",
                       got, want, rel, elapsed));
}

void criterion_single_mode_moment() {
    const double budget = 30.0; // seconds

    const auto t0 = Clock::now();
    ExperimentSpec spec;
    spec.tau = 1.0;
    spec.t_values = {1.0};
    spec.paths = 10000;
    spec.grid = Grid::make(1, 4.0);
    spec.model = make_model(ModelKind::Laplacian, 2.0, 4.0);
    spec.noise = NoiseSpec::make(NoiseSpec::Kind::ScalarMultiplicative, 1, 0.25, 0.0,
                                 2026);
    spec.profile = ForcingProfile::zero();
    spec.consts.gamma2 = 0.1;
    spec.consts.gamma4 = 0.0625; // sigma^2: scalar noise regenerates |u|^2
    spec.consts.gamma5 = 2.0 / 3.0;
    spec.consts.gamma6 = 1.0;
    spec.consts.alpha = 2.0;
    spec.consts.lambda = poincare_lambda(spec.model.triple); // 2/4 = drift rate
    spec.consts.epsilon = 0.25;
    spec.cfg.dt = 1e-3;
    spec.cfg.scheme = Scheme::Explicit;
    spec.cfg.epsilon = 0.25;
    spec.cfg.record_every = 10;
    spec.initial_family.at_extreme_radius = true;
    spec.threads = 0;
    const auto series = estimate_mean_square(spec, 1.0);
    const double elapsed = seconds_since(t0);

    const double a = 0.5, sigma = 0.25, eps = 0.25;
    const double want = std::exp((-2.0 * a + eps * eps * sigma * sigma) * 1.0);
    const double got = series.mean_sq.back();
    const double se = series.std_err.back();
    const bool pass = std::fabs(got - want) <= 3.0 * se && elapsed < budget;

    g_mode_series = series;
    g_mode_consts = spec.consts;

    report(4, "single-mode second moment vs exp((-2a + eps^2 sigma^2) t), 10^4 paths",
           pass,
           fmt::format("E|u(1)|^2 = {:.6g}, exact {:.6g}, |diff| = {:.2e} vs 3 SE = "
                       "{:.2e}, {:.1f} s",
                       got, want, std::fabs(got - want), 3.0 * se, elapsed));
}

void criterion_pullback_absorption() {
    const double budget = 120.0; // seconds

    const auto t0 = Clock::now();
    const auto s = testing::reaction_diffusion_setup(2026);
    ExperimentSpec spec;
    spec.tau = 0.0;
    spec.t_values = {1.0, 2.0, 4.0, 8.0};
    spec.paths = 2000;
    spec.grid = Grid::make(63, 1.0);
    spec.model = s.model;
    spec.noise = s.noise;
    spec.profile = s.profile;
    spec.consts = s.consts;
    spec.gap_mode = s.gap_mode;
    spec.cfg.dt = 1.0 / 512.0;
    spec.cfg.scheme = Scheme::SemiImplicit;
    spec.cfg.epsilon = s.consts.epsilon; // half the certified threshold
    spec.cfg.record_every = 32;
    spec.threads = 0;
    const auto rep = pullback_absorption(spec, 1e-10);
    const double elapsed = seconds_since(t0);

    bool monotone = true;
    for (size_t i = 0; i + 1 < rep.entries.size(); ++i) {
        const auto& a = rep.entries[i];
        const auto& b = rep.entries[i + 1];
        if (b.mean_sq > a.mean_sq + 3.0 * (a.std_err + b.std_err)) monotone = false;
    }
    const bool pass = rep.absorbed() && monotone && elapsed < budget;

    std::string entries;
    for (const auto& e : rep.entries)
        entries += fmt::format("t={} m={:.4g} ", e.t, e.mean_sq);
    report(5, "pullback absorption, reaction-diffusion, 2000 paths, horizons {1,2,4,8}",
           pass,
           fmt::format("{}radius {:.6g}, entry t={}, monotone={}, {:.1f} s", entries,
                       rep.radius,
                       rep.entry_time ? fmt::format("{:.6g}", *rep.entry_time) : "none",
                       monotone, elapsed));
}

void criterion_energy_residual() {
    const double max_fraction = 0.05;

    const auto kh = derived_gronwall_constants(g_heat_consts, GapMode::Abstract);
    const auto rh = gronwall_residual(g_heat_series, g_heat_consts, kh,
                                      ForcingProfile::zero());
    const auto km = derived_gronwall_constants(g_mode_consts, GapMode::Abstract);
    const auto rm = gronwall_residual(g_mode_series, g_mode_consts, km,
                                      ForcingProfile::zero());

    const bool pass = rh.points > 0 && rm.points > 0 &&
                      rh.fraction() <= max_fraction && rm.fraction() <= max_fraction;
    report(6, "second-moment inequality residual on the runs of criteria 3 and 4",
           pass,
           fmt::format("heat run {}/{} points above band, single-mode run {}/{}",
                       rh.violations, rh.points, rm.violations, rm.points));
}

void criterion_tempered_integral() {
    const double tol = 1e-6;    // absolute
    const double budget = 0.01; // seconds

    const auto t0 = Clock::now();
    ForcingProfile p;
    p.g = ScalarSignal::exponential(1.0, 0.5); // |g(s)|_H^2 = e^s
    p.shape = ForcingProfile::Shape::Uniform;
    p.shape_norm_sq = 1.0;
    const double got = tempered_integral(p, 0.0, 1.0, 2.0, 1e-10);
    const double elapsed = seconds_since(t0);

    const double want = 0.5; // int_{-inf}^0 e^{2s} ds
    const bool pass = std::fabs(got - want) <= tol && elapsed < budget;
    report(7, "tempered forcing integral with exponential envelope", pass,
           fmt::format("I(0) = {:.12g}, exact 0.5, err {:.2e}, {:.2e} s", got,
                       std::fabs(got - want), elapsed));
}

void criterion_embedding_constant() {
    const double tol = 1e-8; // relative

    bool pass = true;
    std::string detail;
    for (int n : {15, 63, 255}) {
        const Grid g = Grid::make(n, 1.0);
        const double got = min_rayleigh_quotient(g);
        const double h = g.spacing();
        const double want = 2.0 / (h * h) * (1.0 - std::cos(std::numbers::pi * h));
        const double rel = std::fabs(got - want) / want;
        if (rel > tol || !(got > 2.0)) pass = false;
        detail += fmt::format("N={} ratio {:.10g} rel err {:.1e}; ", n, got, rel);
    }
    report(8, "discrete Rayleigh quotient matches (2/h^2)(1 - cos(pi h)) and exceeds 2",
           pass, detail);
}

void criterion_worker_independence() {
    const char* text = R"(seed = 7

[model]
kind = laplacian
reaction = tanh

[grid]
nodes = 15

[constants]
gamma1 = 1
gamma2 = 1
gamma3 = 3
gamma4 = 2
gamma6 = 1
epsilon = 0.09
gap_mode = drift_strict

[forcing]
g_form = constant
g_value = 1.0
g_shape = first_mode

[noise]
kind = scalar
sigma_base = 0.5

[experiment]
tau = 0
t_values = 0.25, 0.5
paths = 8
dt = 0.015625
scheme = semi_implicit
)";

    namespace fs = std::filesystem;
    fs::remove_all("acceptance_scratch");
    const auto f = ConfigFile::parse_text(text, "acceptance.ini");
    const auto rc = load_run_config(f, Command::Absorb);
    run_command(Command::Absorb, rc, "acceptance_scratch/w1", 1);
    run_command(Command::Absorb, rc, "acceptance_scratch/w3", 3);

    const std::string j1 = slurp("acceptance_scratch/w1/absorb.json");
    const std::string j3 = slurp("acceptance_scratch/w3/absorb.json");
    const std::string c1 = slurp("acceptance_scratch/w1/entries.csv");
    const std::string c3 = slurp("acceptance_scratch/w3/entries.csv");
    const bool pass = !j1.empty() && j1 == j3 && !c1.empty() && c1 == c3;
    report(9, "absorb reports byte-identical for 1 and 3 workers", pass,
           fmt::format("json {} bytes {}, csv {} bytes {}", j1.size(),
                       j1 == j3 ? "equal" : "DIFFER", c1.size(),
                       c1 == c3 ? "equal" : "DIFFER"));
}

} // namespace

int main() {
    criterion_thresholds();
    criterion_hypothesis_checks();
    criterion_heat_decay();
    criterion_single_mode_moment();
    criterion_pullback_absorption();
    criterion_energy_residual();
    criterion_tempered_integral();
    criterion_embedding_constant();
    criterion_worker_independence();

    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
