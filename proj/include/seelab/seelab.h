/* seelab: mean-square absorption laboratory for stochastic evolution
 * equations.  C interface of the shared library.
 *
 * Usage pattern:
 *
 *     seelab_run* run = NULL;
 *     seelab_report* rep = NULL;
 *     if (seelab_run_open("model.ini", &run) != SEELAB_OK) { ... }
 *     seelab_run_set_seed(run, 7);
 *     if (seelab_run_execute(run, "absorb", &rep) == SEELAB_OK) {
 *         puts(seelab_report_summary(rep));
 *         int rc = seelab_report_exit_code(rep);   0 pass, 1 property failed
 *         ...
 *     } else {
 *         fputs(seelab_last_error(), stderr);
 *     }
 *     seelab_report_close(rep);
 *     seelab_run_close(run);
 *
 * A non-OK status means the run could not be executed (bad config, violated
 * structural precondition, exploding trajectory, I/O).  A report with exit
 * code 1 means the run executed and the examined property failed (hypothesis
 * violated, no absorption, decay too slow); the JSON report is complete in
 * both cases.  seelab_last_error() returns the message of the most recent
 * failure on the calling thread.
 */

#ifndef SEELAB_H
#define SEELAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum seelab_status {
    SEELAB_OK = 0,
    SEELAB_INVALID_ARGUMENT = 1, /* null handle, unknown command name */
    SEELAB_CONFIG = 2,           /* malformed or inconsistent configuration */
    SEELAB_PRECONDITION = 3,     /* structural requirement violated, e.g. (H5) */
    SEELAB_DIVERGENT = 4,        /* forcing not tempered, tail integral infinite */
    SEELAB_BLOWUP = 5,           /* trajectory left the representable range */
    SEELAB_IO = 6,               /* file could not be read or written */
    SEELAB_INTERNAL = 7          /* unexpected failure */
} seelab_status;

/* Opaque handles.  A run owns a parsed configuration plus overrides; a report
 * owns the result of one executed command. */
typedef struct seelab_run seelab_run;
typedef struct seelab_report seelab_report;

const char* seelab_version(void);

/* Message of the most recent failure on this thread; empty after success. */
const char* seelab_last_error(void);

seelab_status seelab_run_open(const char* config_path, seelab_run** out_run);
seelab_status seelab_run_open_text(const char* config_text, seelab_run** out_run);
void seelab_run_close(seelab_run* run);

/* Overrides applied on top of the configuration file. */
seelab_status seelab_run_set_seed(seelab_run* run, uint64_t seed);
seelab_status seelab_run_set_paths(seelab_run* run, long long paths);
seelab_status seelab_run_set_output_dir(seelab_run* run, const char* dir);
/* 0 = one worker per hardware thread.  Results are byte-identical for any
 * worker count. */
seelab_status seelab_run_set_threads(seelab_run* run, int threads);

/* command: check | threshold | radius | simulate | absorb | decay.
 * On SEELAB_OK the caller owns *out_report. */
seelab_status seelab_run_execute(seelab_run* run, const char* command,
                                 seelab_report** out_report);

int seelab_report_exit_code(const seelab_report* report);
const char* seelab_report_json(const seelab_report* report);
const char* seelab_report_summary(const seelab_report* report);
void seelab_report_close(seelab_report* report);

/* Volume of the unit ball in n dimensions. */
seelab_status seelab_unit_ball_volume(int dim, double* out);

/* Largest certified noise intensity min{1, sqrt((lambda gamma5 - gamma2 -
 * |gamma4|) / (4 lambda gamma6 + |gamma4|))}.  SEELAB_PRECONDITION when the
 * dissipativity gap (H5) is not positive. */
seelab_status seelab_noise_threshold(double lambda, double gamma2, double gamma4,
                                     double gamma5, double gamma6, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SEELAB_H */
