#include "seelab/seelab.h"

#include <exception>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "errors.hpp"

using namespace seelab;

struct seelab_run {
    ConfigFile file;
    bool has_seed = false;
    std::uint64_t seed = 0;
    bool has_paths = false;
    long long paths = 0;
    std::string output_dir; ///< empty = take the configured directory
    int threads = 0;
};

struct seelab_report {
    int exit_code = 0;
    std::string json_text;
    std::string summary;
};

namespace {

thread_local std::string g_last_error;

seelab_status fail(seelab_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

/// Run f under the exception-to-status mapping shared by every entry point.
template <class F>
seelab_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return SEELAB_OK;
    } catch (const ValidationError& e) {
        return fail(SEELAB_CONFIG, e.what());
    } catch (const DivergenceError& e) {
        return fail(SEELAB_DIVERGENT, e.what());
    } catch (const BlowUpError& e) {
        return fail(SEELAB_BLOWUP, e.what());
    } catch (const PreconditionError& e) {
        return fail(SEELAB_PRECONDITION, e.what());
    } catch (const IoError& e) {
        return fail(SEELAB_IO, e.what());
    } catch (const std::exception& e) {
        return fail(SEELAB_INTERNAL, e.what());
    } catch (...) {
        return fail(SEELAB_INTERNAL, "unknown failure");
    }
}

} // namespace

extern "C" {

const char* seelab_version(void) { return "0.1.0"; }

const char* seelab_last_error(void) { return g_last_error.c_str(); }

seelab_status seelab_run_open(const char* config_path, seelab_run** out_run) {
    if (!config_path || !out_run)
        return fail(SEELAB_INVALID_ARGUMENT, "null argument to seelab_run_open");
    *out_run = nullptr;
    return guarded([&] {
        auto run = new seelab_run;
        try {
            run->file = ConfigFile::parse_file(config_path);
        } catch (...) {
            delete run;
            throw;
        }
        *out_run = run;
    });
}

seelab_status seelab_run_open_text(const char* config_text, seelab_run** out_run) {
    if (!config_text || !out_run)
        return fail(SEELAB_INVALID_ARGUMENT, "null argument to seelab_run_open_text");
    *out_run = nullptr;
    return guarded([&] {
        auto run = new seelab_run;
        try {
            run->file = ConfigFile::parse_text(config_text);
        } catch (...) {
            delete run;
            throw;
        }
        *out_run = run;
    });
}

void seelab_run_close(seelab_run* run) { delete run; }

seelab_status seelab_run_set_seed(seelab_run* run, uint64_t seed) {
    if (!run) return fail(SEELAB_INVALID_ARGUMENT, "null run handle");
    run->has_seed = true;
    run->seed = seed;
    return SEELAB_OK;
}

seelab_status seelab_run_set_paths(seelab_run* run, long long paths) {
    if (!run) return fail(SEELAB_INVALID_ARGUMENT, "null run handle");
    if (paths < 2)
        return fail(SEELAB_INVALID_ARGUMENT, "paths must be at least 2");
    run->has_paths = true;
    run->paths = paths;
    return SEELAB_OK;
}

seelab_status seelab_run_set_output_dir(seelab_run* run, const char* dir) {
    if (!run || !dir) return fail(SEELAB_INVALID_ARGUMENT, "null argument");
    run->output_dir = dir;
    return SEELAB_OK;
}

seelab_status seelab_run_set_threads(seelab_run* run, int threads) {
    if (!run) return fail(SEELAB_INVALID_ARGUMENT, "null run handle");
    if (threads < 0)
        return fail(SEELAB_INVALID_ARGUMENT, "threads must be >= 0");
    run->threads = threads;
    return SEELAB_OK;
}

seelab_status seelab_run_execute(seelab_run* run, const char* command,
                                 seelab_report** out_report) {
    if (!run || !command || !out_report)
        return fail(SEELAB_INVALID_ARGUMENT, "null argument to seelab_run_execute");
    *out_report = nullptr;

    Command cmd;
    try {
        cmd = parse_command(command);
    } catch (const std::exception& e) {
        return fail(SEELAB_INVALID_ARGUMENT, e.what());
    }

    return guarded([&] {
        RunConfig rc = load_run_config(run->file, cmd);
        if (run->has_seed) {
            rc.seed = run->seed;
            rc.noise.master_seed = run->seed;
        }
        if (run->has_paths) rc.paths = run->paths;
        if (!run->output_dir.empty()) rc.output_dir = run->output_dir;

        CommandResult res = run_command(cmd, rc, rc.output_dir, run->threads);
        *out_report = new seelab_report{res.exit_code, res.report.dump(2) + "\n",
                                        res.summary};
    });
}

int seelab_report_exit_code(const seelab_report* report) {
    return report ? report->exit_code : 2;
}

const char* seelab_report_json(const seelab_report* report) {
    return report ? report->json_text.c_str() : "";
}

const char* seelab_report_summary(const seelab_report* report) {
    return report ? report->summary.c_str() : "";
}

void seelab_report_close(seelab_report* report) { delete report; }

seelab_status seelab_unit_ball_volume(int dim, double* out) {
    if (!out) return fail(SEELAB_INVALID_ARGUMENT, "null output pointer");
    if (dim < 1) return fail(SEELAB_INVALID_ARGUMENT, "dimension must be >= 1");
    return guarded([&] { *out = unit_ball_volume(dim); });
}

seelab_status seelab_noise_threshold(double lambda, double gamma2, double gamma4,
                                     double gamma5, double gamma6, double* out) {
    if (!out) return fail(SEELAB_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        StructuralConstants c;
        c.gamma2 = gamma2;
        c.gamma4 = gamma4;
        c.gamma5 = gamma5;
        c.gamma6 = gamma6;
        c.lambda = lambda;
        validate(c);
        *out = noise_threshold(c);
    });
}

} // extern "C"
