/// Command-line front end.  Talks to the library exclusively through the
/// C interface in seelab/seelab.h, so it doubles as a smoke test of the
/// shared-library boundary.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "seelab/seelab.h"

namespace {

/// Process exit code for a failed library call: 2 for input problems the
/// user can fix in the invocation or config, 1 for violated preconditions
/// and runtime blow-ups.
int status_exit(seelab_status s) {
    switch (s) {
    case SEELAB_OK:
        return 0;
    case SEELAB_INVALID_ARGUMENT:
    case SEELAB_CONFIG:
    case SEELAB_IO:
        return 2;
    default:
        return 1;
    }
}

int report_failure(seelab_status s) {
    std::fprintf(stderr, "seelab: %s\n", seelab_last_error());
    return status_exit(s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mean-square absorption laboratory for stochastic evolution "
                 "equations"};
    app.set_version_flag("--version", seelab_version());
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    std::uint64_t seed = 0;
    long long paths = 0;
    int threads = 0;
    bool want_json = false;

    const struct {
        const char* name;
        const char* help;
    } commands[] = {
        {"check", "verify the structural hypotheses (H0)-(H5) by sampling"},
        {"threshold", "largest certified noise intensity"},
        {"radius", "absorbing-set radius R(tau) from the energy estimate"},
        {"simulate", "integrate one trajectory and record its H-norm"},
        {"absorb", "pullback absorption experiment over a family of horizons"},
        {"decay", "ensemble decay rate and energy-inequality residual"},
    };
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", config, "configuration file")->required();
        sub->add_option("--seed", seed, "master seed (overrides the config)");
        sub->add_option("--paths", paths, "Monte Carlo paths (overrides the config)");
        sub->add_option("--out", out_dir, "report directory (overrides the config)");
        sub->add_option("--threads", threads,
                        "worker threads, 0 = all cores (results do not depend on this)");
        sub->add_flag("--json", want_json, "print the full JSON report to stdout");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help, --version
        std::fprintf(stderr, "seelab: %s\n", e.what());
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();

    seelab_run* run = nullptr;
    seelab_status st = seelab_run_open(config.c_str(), &run);
    if (st != SEELAB_OK) return report_failure(st);

    if (sub->count("--seed") > 0) seelab_run_set_seed(run, seed);
    if (sub->count("--paths") > 0) {
        st = seelab_run_set_paths(run, paths);
        if (st != SEELAB_OK) {
            seelab_run_close(run);
            return report_failure(st);
        }
    }
    if (sub->count("--out") > 0) seelab_run_set_output_dir(run, out_dir.c_str());
    if (sub->count("--threads") > 0) {
        st = seelab_run_set_threads(run, threads);
        if (st != SEELAB_OK) {
            seelab_run_close(run);
            return report_failure(st);
        }
    }

    seelab_report* rep = nullptr;
    st = seelab_run_execute(run, sub->get_name().c_str(), &rep);
    if (st != SEELAB_OK) {
        seelab_run_close(run);
        return report_failure(st);
    }

    if (want_json)
        std::fputs(seelab_report_json(rep), stdout);
    else
        std::printf("%s\n", seelab_report_summary(rep));

    const int rc = seelab_report_exit_code(rep);
    seelab_report_close(rep);
    seelab_run_close(run);
    return rc;
}
