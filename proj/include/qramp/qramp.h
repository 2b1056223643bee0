/* qramp.h — C interface to the ramp-design and spin-dynamics library.
 *
 * All entry points return qramp_status; on failure qramp_error_message()
 * holds a thread-local description of the last error. Handles are created
 * by the *_create/_parse/_design functions and released with the matching
 * *_free; passing NULL where a handle is required yields QRAMP_NULL_HANDLE.
 */
#ifndef QRAMP_H
#define QRAMP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    QRAMP_OK = 0,
    QRAMP_INVALID_ARGUMENT = 1,
    QRAMP_RUNTIME_ERROR = 2,
    QRAMP_NULL_HANDLE = 3,
    QRAMP_BUFFER_TOO_SMALL = 4
} qramp_status;

const char* qramp_error_message(void);
const char* qramp_version(void);

typedef struct qramp_manifest qramp_manifest;
typedef struct qramp_context qramp_context;
typedef struct qramp_schedule qramp_schedule;
typedef struct qramp_sweep qramp_sweep;

/* --- manifest: flat key = value configuration ------------------------- */

qramp_status qramp_manifest_parse_file(const char* path, const char* const* overrides,
                                       size_t n_overrides, qramp_manifest** out);
qramp_status qramp_manifest_parse_text(const char* text, const char* const* overrides,
                                       size_t n_overrides, qramp_manifest** out);
/* Canonical echo of the resolved configuration. If *needed > cap the call
 * returns QRAMP_BUFFER_TOO_SMALL and leaves buf untouched. */
qramp_status qramp_manifest_serialize(const qramp_manifest* m, char* buf, size_t cap,
                                      size_t* needed);
qramp_status qramp_manifest_hash(const qramp_manifest* m, uint64_t* out);
/* Command string: design, evolve, sweep-tf, sweep-dd, sweep-gamma,
 * sweep-size, or validate. */
qramp_status qramp_manifest_command(const qramp_manifest* m, char* buf, size_t cap,
                                    size_t* needed);
void qramp_manifest_free(qramp_manifest* m);

/* --- context: spectral scan plus boundary states ----------------------- */

qramp_status qramp_context_create(const qramp_manifest* m, qramp_context** out);
void qramp_context_free(qramp_context* c);

/* --- schedule design ---------------------------------------------------- */

qramp_status qramp_schedule_design(const qramp_context* c, double t_f_ms, qramp_schedule** out);
qramp_status qramp_schedule_write_csv(const qramp_schedule* s, const char* path);
/* Borrowed views into the schedule samples; valid until the handle is freed. */
qramp_status qramp_schedule_samples(const qramp_schedule* s, const double** t_ms,
                                    const double** B, size_t* n);
qramp_status qramp_schedule_c_value(const qramp_schedule* s, double* out);
/* max/min ratio of the adiabaticity parameter along the ramp. */
qramp_status qramp_schedule_flatness(const qramp_context* c, const qramp_schedule* s,
                                     double* out);

void qramp_schedule_free(qramp_schedule* s);

/* --- evolution ----------------------------------------------------------- */

/* Designs the manifest's protocol at t_f_ms and evolves: closed Schrodinger
 * when Gamma = 0, Lindblad dephasing otherwise. When trajectory_csv is
 * non-NULL, samples t_ms,fidelity,trace,purity at the manifest's
 * output.stride. */
qramp_status qramp_evolve_fidelity(const qramp_context* c, double t_f_ms,
                                   const char* trajectory_csv, double* F_out);

/* --- sweeps ---------------------------------------------------------------- */

qramp_status qramp_run_sweep(const qramp_manifest* m, qramp_sweep** out);
qramp_status qramp_sweep_write(const qramp_sweep* s, const qramp_manifest* m,
                               const char* csv_path, const char* json_path);
qramp_status qramp_sweep_record_count(const qramp_sweep* s, size_t* out);
qramp_status qramp_sweep_record(const qramp_sweep* s, size_t index, double* value, double* F_max,
                                double* t_f_star_ms, char* peak_mode_buf, size_t cap);
void qramp_sweep_free(qramp_sweep* s);

/* --- validation -------------------------------------------------------------- */

/* Runs the invariant suite for the manifest's model; writes a PASS/FAIL
 * report line per property. *all_pass is 1 when every property holds. */
qramp_status qramp_validate(const qramp_manifest* m, char* report_buf, size_t cap, size_t* needed,
                            int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* QRAMP_H */
