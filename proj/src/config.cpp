#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "errors.hpp"

namespace seelab {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string section_label(const std::string& section) {
    return section.empty() ? "the top level" : fmt::format("section [{}]", section);
}

double parse_double(const std::string& value, const std::string& context) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ValidationError(fmt::format("{} is not a number: '{}'", context, value));
    return x;
}

long long parse_int(const std::string& value, const std::string& context) {
    const std::string v = trim(value);
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        throw ValidationError(fmt::format("{} is not an integer: '{}'", context, value));
    return x;
}

bool parse_bool(const std::string& value, const std::string& context) {
    const std::string v = trim(value);
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ValidationError(fmt::format("{} is not a boolean: '{}'", context, value));
}

} // namespace

Command parse_command(const std::string& name) {
    if (name == "check") return Command::Check;
    if (name == "threshold") return Command::Threshold;
    if (name == "radius") return Command::Radius;
    if (name == "simulate") return Command::Simulate;
    if (name == "absorb") return Command::Absorb;
    if (name == "decay") return Command::Decay;
    throw ValidationError(fmt::format(
        "unknown command '{}' (expected check|threshold|radius|simulate|absorb|decay)",
        name));
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot read config file '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& origin) {
    ConfigFile out;
    out.origin_ = origin;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError(fmt::format(
                    "{}:{}: malformed section header '{}'", origin, ln, line));
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ValidationError(fmt::format("{}:{}: empty section name", origin, ln));
            out.sections_[section];
            continue;
        }

        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(fmt::format(
                "{}:{}: expected 'key = value', got '{}'", origin, ln, line));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationError(fmt::format("{}:{}: empty key", origin, ln));

        auto& sec = out.sections_[section];
        if (sec.count(key))
            throw ValidationError(fmt::format(
                "{}:{}: duplicate key '{}' in {}", origin, ln, key, section_label(section)));
        sec[key] = Entry{value, ln, false};
    }
    return out;
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    k->second.consumed = true;
    return &k->second;
}

bool ConfigFile::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigFile::require(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e)
        throw ValidationError(fmt::format(
            "missing key '{}' in {} ({})", key, section_label(section), origin_));
    return e->value;
}

std::string ConfigFile::get(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    const Entry* e = find(section, key);
    return e ? e->value : fallback;
}

double ConfigFile::require_double(const std::string& section, const std::string& key) const {
    return parse_double(require(section, key),
                        fmt::format("'{}' in {}", key, section_label(section)));
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    return parse_double(e->value, fmt::format("'{}' in {}", key, section_label(section)));
}

long long ConfigFile::get_int(const std::string& section, const std::string& key,
                              long long fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    return parse_int(e->value, fmt::format("'{}' in {}", key, section_label(section)));
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    return parse_bool(e->value, fmt::format("'{}' in {}", key, section_label(section)));
}

std::vector<double> ConfigFile::require_double_list(const std::string& section,
                                                    const std::string& key) const {
    const std::string text = require(section, key);
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const std::string v = trim(item);
        if (v.empty()) continue;
        out.push_back(parse_double(
            v, fmt::format("list entry of '{}' in {}", key, section_label(section))));
    }
    if (out.empty())
        throw ValidationError(fmt::format(
            "'{}' in {} holds no values", key, section_label(section)));
    return out;
}

void ConfigFile::require_section(const std::string& section) const {
    if (!has_section(section))
        throw ValidationError(fmt::format(
            "missing section [{}] ({})", section, origin_));
}

void ConfigFile::check_unknown_keys(const std::string& section) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return;
    for (const auto& [key, entry] : s->second)
        if (!entry.consumed)
            throw ValidationError(fmt::format(
                "{}:{}: unknown key '{}' in {}", origin_, entry.line, key,
                section_label(section)));
}

namespace {

ScalarSignal load_signal(const ConfigFile& f, const std::string& sec,
                         const std::string& prefix, const ScalarSignal& fallback) {
    const std::string form = f.get(sec, prefix + "_form", "");
    if (form.empty()) return fallback;
    auto num = [&](const char* suffix) {
        return f.require_double(sec, prefix + "_" + suffix);
    };
    if (form == "zero") return ScalarSignal::zero();
    if (form == "constant") return ScalarSignal::constant(num("value"));
    if (form == "exponential") return ScalarSignal::exponential(num("value"), num("rate"));
    if (form == "polynomial") return ScalarSignal::polynomial(num("value"), num("degree"));
    if (form == "compact") return ScalarSignal::compact(num("value"), num("lo"), num("hi"));
    if (form == "csv") return ScalarSignal::from_csv(f.require(sec, prefix + "_csv"));
    throw ValidationError(fmt::format(
        "'{}_form' in section [{}] must be zero|constant|exponential|polynomial|"
        "compact|csv, got '{}'", prefix, sec, form));
}

ModelKind parse_model_kind(const std::string& v) {
    if (v == "laplacian") return ModelKind::Laplacian;
    if (v == "power_law") return ModelKind::PowerLaw;
    if (v == "p_laplace") return ModelKind::PLaplace;
    if (v == "porous_medium") return ModelKind::PorousMedium;
    throw ValidationError(fmt::format(
        "model kind must be laplacian|power_law|p_laplace|porous_medium, got '{}'", v));
}

/// Catalog coercivity constant for 'gamma5 = auto'.
double catalog_gamma5(ModelKind kind, double lambda, double beta1) {
    switch (kind) {
    case ModelKind::Laplacian:
    case ModelKind::PowerLaw:
        return 2.0 / 3.0;
    case ModelKind::PLaplace:
        return std::min(1.0, lambda) / 6.0;
    case ModelKind::PorousMedium:
        return (2.0 / 3.0) * beta1;
    }
    throw ValidationError("unknown model kind");
}

} // namespace

ExampleModel RunConfig::example_kind() const {
    switch (model.kind) {
    case ModelKind::Laplacian: return ExampleModel::ReactionDiffusion;
    case ModelKind::PowerLaw: return ExampleModel::PowerLaw;
    case ModelKind::PLaplace: return ExampleModel::PLaplace;
    case ModelKind::PorousMedium: return ExampleModel::PorousMedium;
    }
    throw ValidationError("unknown model kind");
}

ExperimentSpec RunConfig::experiment(int threads) const {
    ExperimentSpec s;
    s.tau = tau;
    s.t_values = t_values;
    s.paths = paths;
    s.initial_family = family;
    s.grid = grid;
    s.model = model;
    s.noise = noise;
    s.profile = profile;
    s.cfg = sim;
    s.consts = consts;
    s.gap_mode = gap_mode;
    s.certified = certified;
    s.threads = threads;
    return s;
}

RunConfig load_run_config(const ConfigFile& f, Command cmd) {
    RunConfig rc;
    rc.seed = static_cast<std::uint64_t>(f.get_int("", "seed", 0));
    rc.output_dir = f.get("output", "directory", "out");
    f.check_unknown_keys("");
    f.check_unknown_keys("output");

    // model + grid: every command needs the triple and the embedding constant.
    f.require_section("model");
    f.require_section("grid");
    rc.grid = Grid::make(static_cast<int>(f.get_int("grid", "nodes", 63)),
                         f.get_double("grid", "length", 1.0));
    f.check_unknown_keys("grid");

    const ModelKind kind = parse_model_kind(f.require("model", "kind"));
    const double p = f.get_double("model", "p", 2.0);

    PsiParams psi;
    psi.scale = f.get_double("model", "psi_scale", 1.0);
    psi.beta1 = f.get_double("model", "psi_beta1", psi.scale);
    psi.beta2 = f.get_double("model", "psi_beta2", 0.0);
    psi.beta3 = f.get_double("model", "psi_beta3", psi.scale);
    psi.beta4 = f.get_double("model", "psi_beta4", 0.0);

    // constants: reaction bounds live here and feed the reaction spec, so a
    // config cannot declare one thing and simulate another.
    f.require_section("constants");
    StructuralConstants& c = rc.consts;
    c.gamma1 = f.get_double("constants", "gamma1", 0.0);
    c.gamma2 = f.require_double("constants", "gamma2");
    c.gamma3 = f.get_double("constants", "gamma3", 0.0);
    c.gamma4 = f.get_double("constants", "gamma4", 0.0);
    c.gamma6 = f.get_double("constants", "gamma6", 1.0);
    c.epsilon = f.get_double("constants", "epsilon", 1.0);

    ReactionSpec reaction;
    const std::string rf = f.get("model", "reaction", "zero");
    if (rf == "zero") reaction.form = ReactionSpec::Form::Zero;
    else if (rf == "tanh") reaction.form = ReactionSpec::Form::Tanh;
    else if (rf == "linear") reaction.form = ReactionSpec::Form::Linear;
    else
        throw ValidationError(fmt::format(
            "model reaction must be zero|tanh|linear, got '{}'", rf));
    reaction.gamma1 = c.gamma1;
    reaction.gamma2 = c.gamma2;
    reaction.slope = f.get_double("model", "reaction_slope", 0.0);

    rc.model = make_model(kind, p, rc.grid.length, reaction, psi);
    f.check_unknown_keys("model");

    const std::string lam = f.get("constants", "lambda", "auto");
    if (lam == "auto") {
        rc.lambda_auto = true;
        c.lambda = poincare_lambda(rc.model.triple);
    } else {
        c.lambda = parse_double(lam, "'lambda' in section [constants]");
    }

    const std::string g5 = f.get("constants", "gamma5", "auto");
    if (g5 == "auto") {
        rc.gamma5_auto = true;
        c.gamma5 = catalog_gamma5(kind, c.lambda, psi.beta1);
    } else {
        c.gamma5 = parse_double(g5, "'gamma5' in section [constants]");
    }

    const std::string al = f.get("constants", "alpha", "auto");
    c.alpha = (al == "auto") ? rc.model.natural_alpha()
                             : parse_double(al, "'alpha' in section [constants]");
    if (c.alpha != rc.model.natural_alpha())
        throw ValidationError(fmt::format(
            "alpha = {} does not match the model's coercivity exponent {}",
            c.alpha, rc.model.natural_alpha()));

    const std::string gm = f.get("constants", "gap_mode", "abstract");
    if (gm == "abstract") rc.gap_mode = GapMode::Abstract;
    else if (gm == "drift_strict") rc.gap_mode = GapMode::DriftStrict;
    else
        throw ValidationError(fmt::format(
            "gap_mode must be abstract|drift_strict, got '{}'", gm));

    validate(c);
    f.check_unknown_keys("constants");

    const bool needs_forcing = cmd != Command::Threshold;
    if (needs_forcing && f.has_section("forcing")) {
        ForcingProfile& pf = rc.profile;
        pf.g = load_signal(f, "forcing", "g", ScalarSignal::zero());
        pf.norm_sq_mode = f.get_bool("forcing", "g_norm_sq_mode", false);
        const std::string shape =
            f.get("forcing", "g_shape", pf.norm_sq_mode ? "zero" : "uniform");
        if (shape == "zero") pf.shape = ForcingProfile::Shape::Zero;
        else if (shape == "uniform") pf.shape = ForcingProfile::Shape::Uniform;
        else if (shape == "first_mode") pf.shape = ForcingProfile::Shape::FirstMode;
        else
            throw ValidationError(fmt::format(
                "g_shape must be zero|uniform|first_mode, got '{}'", shape));
        if (!pf.norm_sq_mode && pf.shape != ForcingProfile::Shape::Zero) {
            State s(rc.grid);
            if (pf.shape == ForcingProfile::Shape::Uniform) {
                for (int i = 0; i < rc.grid.n; ++i) s[i] = 1.0;
            } else {
                s = sine_mode(rc.grid, 1);
            }
            pf.shape_norm_sq = h_norm_sq(s, rc.model.triple);
        }
        pf.h1 = load_signal(f, "forcing", "h1", ScalarSignal::zero());
        pf.h2 = load_signal(f, "forcing", "h2", ScalarSignal::zero());
        f.check_unknown_keys("forcing");
    }

    const bool needs_noise = cmd == Command::Check || cmd == Command::Simulate ||
                             cmd == Command::Absorb || cmd == Command::Decay;
    if (needs_noise && f.has_section("noise")) {
        const std::string nk = f.get("noise", "kind", "zero");
        NoiseSpec::Kind noise_kind = NoiseSpec::Kind::Zero;
        if (nk == "zero") noise_kind = NoiseSpec::Kind::Zero;
        else if (nk == "scalar") noise_kind = NoiseSpec::Kind::ScalarMultiplicative;
        else if (nk == "diagonal") noise_kind = NoiseSpec::Kind::DiagonalNemytskii;
        else if (nk == "additive") noise_kind = NoiseSpec::Kind::Additive;
        else
            throw ValidationError(fmt::format(
                "noise kind must be zero|scalar|diagonal|additive, got '{}'", nk));
        rc.noise = NoiseSpec::make(noise_kind,
                                   static_cast<int>(f.get_int("noise", "modes", 1)),
                                   f.get_double("noise", "sigma_base", 1.0),
                                   f.get_double("noise", "sigma_decay", 0.0), rc.seed);
        f.check_unknown_keys("noise");
    }
    rc.noise.master_seed = rc.seed;

    // experiment: stepping, horizons, family, tolerances.
    const bool needs_stepping = cmd == Command::Simulate || cmd == Command::Absorb ||
                                cmd == Command::Decay;
    if (cmd != Command::Threshold && f.has_section("experiment")) {
        rc.tau = f.get_double("experiment", "tau", 0.0);
        if (f.has("experiment", "t_values"))
            rc.t_values = f.require_double_list("experiment", "t_values");
        rc.paths = f.get_int("experiment", "paths", 2);
        rc.trials = f.get_int("experiment", "trials", 10000);
        rc.quad_tol = f.get_double("experiment", "quad_tol", 1e-10);
        rc.horizon = f.get_double("experiment", "horizon", 1.0);
        rc.fit_lo = f.get_double("experiment", "fit_lo", rc.tau - rc.horizon / 2.0);
        rc.fit_hi = f.get_double("experiment", "fit_hi", rc.tau);
        rc.record_states = f.get_bool("experiment", "record_states", false);
        rc.certified = f.get_bool("experiment", "certified", true);

        rc.sim.dt = f.get_double("experiment", "dt", 1e-3);
        const std::string sch = f.get("experiment", "scheme", "explicit");
        if (sch == "explicit") rc.sim.scheme = Scheme::Explicit;
        else if (sch == "semi_implicit") rc.sim.scheme = Scheme::SemiImplicit;
        else
            throw ValidationError(fmt::format(
                "scheme must be explicit|semi_implicit, got '{}'", sch));
        rc.sim.record_every = f.get_int("experiment", "record_every", 1);
        rc.sim.blow_up_threshold = f.get_double("experiment", "blow_up_threshold", 1e12);

        rc.family.rho = load_signal(f, "experiment", "rho", ScalarSignal::constant(1.0));
        const std::string law = f.get("experiment", "sampling", "extreme");
        if (law == "extreme") rc.family.sampling = InitialFamily::Sampling::Extreme;
        else if (law == "uniform_ball")
            rc.family.sampling = InitialFamily::Sampling::UniformBall;
        else
            throw ValidationError(fmt::format(
                "sampling must be extreme|uniform_ball, got '{}'", law));
        f.check_unknown_keys("experiment");
    }
    rc.sim.epsilon = c.epsilon;

    if (cmd == Command::Absorb && rc.t_values.empty())
        throw ValidationError(
            "missing key 't_values' in section [experiment] (required by absorb)");
    if (needs_stepping && rc.profile.norm_sq_mode)
        throw ValidationError(
            "forcing is declared by its norm only (g_norm_sq_mode); "
            "simulation commands need a separable shape");

    return rc;
}

} // namespace seelab
