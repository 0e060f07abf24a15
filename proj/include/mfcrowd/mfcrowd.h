/* C interface to the crowd-motion mean field solver.
 *
 * All entry points are exception-free: failures come back as an mfc_status
 * plus a message copied into the caller's error buffer. Handles returned
 * through out-parameters are owned by the caller and released with the
 * matching *_free function. Passing NULL where a handle is required is a
 * usage error with undefined behavior, matching standard C library practice.
 */
#ifndef MFCROWD_H
#define MFCROWD_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mfc_status {
    MFC_OK = 0,
    MFC_ERR_INVALID = 1,  /* invalid argument or configuration value */
    MFC_ERR_IO = 2,       /* file missing or unwritable */
    MFC_ERR_PARSE = 3,    /* malformed config, geometry, or field file */
    MFC_ERR_CFL = 4,      /* transport time-step restriction violated */
    MFC_ERR_NUMERIC = 5,  /* factorization failure or nonfinite field */
    MFC_ERR_INTERNAL = 6  /* unexpected failure */
} mfc_status;

typedef struct mfc_config mfc_config;
typedef struct mfc_run_result mfc_run_result;

/* Library version as "major.minor.patch"; storage is static. */
const char* mfc_version(void);

/* Parses a key=value config file. On success *out receives a new handle. */
mfc_status mfc_config_load(const char* path, mfc_config** out,
                           char* errbuf, int errbuf_len);

/* Overrides a loaded value; accepts keys "run.mode" and "output.dir". */
mfc_status mfc_config_set(mfc_config* config, const char* key, const char* value,
                          char* errbuf, int errbuf_len);

void mfc_config_free(mfc_config* config);

/* Solves the coupled system and writes snapshots plus manifest.txt to the
 * configured output directory. Non-convergence is NOT an error status: the
 * result handle reports it through mfc_run_converged. */
mfc_status mfc_run(const mfc_config* config, mfc_run_result** out,
                   char* errbuf, int errbuf_len);

int mfc_run_converged(const mfc_run_result* result);        /* 1 or 0 */
int mfc_run_iterations(const mfc_run_result* result);
double mfc_run_final_residual(const mfc_run_result* result);
/* Valid while the result handle lives. */
const char* mfc_run_output_dir(const mfc_run_result* result);

void mfc_run_result_free(mfc_run_result* result);

/* Runs the uniqueness audit for the configured Hamiltonian. On success
 * *report_out receives a NUL-terminated report released with
 * mfc_string_free. */
mfc_status mfc_check_uniqueness(const mfc_config* config, char** report_out,
                                char* errbuf, int errbuf_len);

void mfc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* MFCROWD_H */
