#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "constants.hpp"
#include "estimators.hpp"
#include "forcing.hpp"
#include "grid.hpp"
#include "integrator.hpp"
#include "models.hpp"
#include "noise.hpp"

namespace seelab {

enum class Command { Check, Threshold, Radius, Simulate, Absorb, Decay };

Command parse_command(const std::string& name); ///< throws ValidationError

/// Flat sectioned key-value text:
///   '#' starts a comment, blank lines ignored
///   [section] headers, then key = value pairs
///   keys before any header belong to the top-level section ""
/// Every diagnostic carries the origin (file name) and line number, and a
/// missing key is reported as "missing key 'k' in section [s]".
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_text(const std::string& text,
                                 const std::string& origin = "<config>");

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    std::string require(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;

    double require_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    long long get_int(const std::string& section, const std::string& key,
                      long long fallback) const;
    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) const;
    std::vector<double> require_double_list(const std::string& section,
                                            const std::string& key) const;

    /// Requires that the section exist (use before reading it).
    void require_section(const std::string& section) const;

    /// Throws on any key of the section never read by an accessor; catches
    /// typos like 'gamm5'.  No-op for absent sections.
    void check_unknown_keys(const std::string& section) const;

    const std::string& origin() const { return origin_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool consumed = false;
    };

    std::string origin_;
    std::map<std::string, std::map<std::string, Entry>> sections_;

    const Entry* find(const std::string& section, const std::string& key) const;
};

/// Everything a command needs, decoded and validated.
struct RunConfig {
    std::uint64_t seed = 0;
    std::string output_dir = "out";

    Grid grid{1, 1.0};
    ModelSpec model;
    StructuralConstants consts;
    bool lambda_auto = false;  ///< lambda came from the closed-form embedding bound
    bool gamma5_auto = false;  ///< gamma5 came from the model catalog
    GapMode gap_mode = GapMode::Abstract;

    ForcingProfile profile;
    NoiseSpec noise;

    SimConfig sim;             ///< dt/scheme/record_every/epsilon/blow-up guard
    double tau = 0.0;
    std::vector<double> t_values;
    long long paths = 2;
    InitialFamily family;
    bool certified = true;
    long long trials = 10000;  ///< sampled hypothesis checks
    double horizon = 1.0;      ///< simulate/decay window length
    double fit_lo = 0.0;       ///< decay fit window (absolute times)
    double fit_hi = 0.0;
    double quad_tol = 1e-10;
    bool record_states = false;

    ExampleModel example_kind() const; ///< catalog family of model.kind

    /// Assemble the estimator experiment for this configuration.
    ExperimentSpec experiment(int threads) const;
};

/// Decode and cross-validate the sections the command needs.  Throws
/// ValidationError naming the offending section/key.
RunConfig load_run_config(const ConfigFile& f, Command cmd);

} // namespace seelab
