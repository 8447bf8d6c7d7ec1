#ifndef MDEP_MDEP_H
#define MDEP_MDEP_H

#include <stddef.h>
#include <stdint.h>

#if defined(MDEP_BUILDING_LIBRARY)
#define MDEP_API __attribute__((visibility("default")))
#else
#define MDEP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Block factor over an i.i.d. source. Immutable; safe to share between threads. */
typedef struct mdep_factor mdep_factor;

typedef enum mdep_status {
    MDEP_OK = 0,
    MDEP_E_INVALID_ARGUMENT = 1,
    MDEP_E_DOMAIN = 2,
    MDEP_E_ARITY = 3,
    MDEP_E_PARSE = 4,
    MDEP_E_RESOURCE = 5,
    MDEP_E_UNSUPPORTED = 6,
    MDEP_E_INTERNAL = 7
} mdep_status;

/* Message of the last failure on the calling thread ("" if none). */
MDEP_API const char* mdep_last_error(void);
MDEP_API const char* mdep_status_name(mdep_status status);
MDEP_API const char* mdep_version(void);

/* Strings returned through char** out-parameters. */
MDEP_API void mdep_string_free(char* s);

/* ---- factors ---- */

MDEP_API mdep_status mdep_factor_from_json(const char* text, mdep_factor** out);
MDEP_API mdep_status mdep_factor_from_file(const char* path, mdep_factor** out);
MDEP_API mdep_status mdep_factor_from_catalog(const char* name, mdep_factor** out);

/* f(window, len, user): len = ell source values. */
typedef double (*mdep_window_fn)(const double* window, size_t len, void* user);

/* Tabulates fn over every window of the finite source {values[i] w.p. probs[i]}. */
MDEP_API mdep_status mdep_factor_from_callback(const double* values, const double* probs, size_t atoms, size_t ell,
                                               mdep_window_fn fn, void* user, mdep_factor** out);

MDEP_API void mdep_factor_free(mdep_factor* factor);
MDEP_API size_t mdep_factor_ell(const mdep_factor* factor);
/* Source values per window (ell times the source dimension). */
MDEP_API size_t mdep_factor_window_width(const mdep_factor* factor);
MDEP_API mdep_status mdep_factor_evaluate(const mdep_factor* factor, const double* window, size_t len, double* out);

/* ---- variance ---- */

MDEP_API mdep_status mdep_sigma2_exact(const mdep_factor* factor, double* out);
MDEP_API mdep_status mdep_var_sn_exact(const mdep_factor* factor, size_t n, double* out);
/* Var(S_n)/n from reps paths; workers 0 = all cores. */
MDEP_API mdep_status mdep_sigma2_mc(const mdep_factor* factor, size_t n, size_t reps, uint64_t seed,
                                    unsigned workers, double* value, double* std_error);

/* degenerate = 1 iff f is a coboundary plus a constant. */
MDEP_API mdep_status mdep_decompose_verdict(const mdep_factor* factor, double tolerance, int* degenerate);

/* rc2 check: sums of f over left+middle_x+right differ? */
MDEP_API mdep_status mdep_rc2_check(const mdep_factor* factor, const double* left, const double* right,
                                    const double* middle_a, const double* middle_b, size_t middle_len,
                                    double tolerance, int* differs);

/* ---- random trees ---- */

/* n_T of a random BST of n nodes (tree as a 1/0 preorder string). */
MDEP_API mdep_status mdep_bst_subtree_count(size_t n, const char* tree, uint64_t seed, size_t* out);
/* n_T of a conditioned GW tree (tree as a degree list "2,0,0"; offspring as
   a preset name or JSON; truncation < 0 keeps the default). */
MDEP_API mdep_status mdep_gw_subtree_count(size_t n, const char* tree, const char* offspring, long truncation,
                                           uint64_t seed, size_t* out);

/* ---- commands ---- */

/* Runs one command given as a JSON object with fields
   command, input, factor, seed, reps, n, tolerance, format, workers,
   truncate, trees, coefs, offspring, certificate.
   *report receives the report (free with mdep_string_free); *verdict is 10
   when the command established sigma^2 > 0 and 0 otherwise. */
MDEP_API mdep_status mdep_run(const char* config_json, char** report, int* verdict);

#ifdef __cplusplus
}
#endif

#endif
