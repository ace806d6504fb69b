/*
 * curvebound.h - C interface to the curvebound library.
 *
 * Conventions
 *   - Every function returns a cvb_status. On anything other than CVB_OK the
 *     message for the calling thread is available from cvb_last_error().
 *   - Strings handed out through `char **` parameters are NUL-terminated,
 *     owned by the caller and released with cvb_free_string().
 *   - Opaque handles are created by *_new / *_parse / check functions and
 *     released with the matching *_free function. Passing NULL to a free
 *     function is a no-op.
 *   - Exact integers that may exceed 64 bits (intersection numbers, annular
 *     distances) are returned as decimal strings.
 *   - Reals are returned as doubles in typed calls and as 21-digit decimal
 *     strings inside JSON documents.
 */
#ifndef CURVEBOUND_H
#define CURVEBOUND_H

#include <stddef.h>
#include <stdint.h>

#if defined(CVB_BUILDING_LIBRARY)
#define CVB_API __attribute__((visibility("default")))
#else
#define CVB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cvb_status {
  CVB_OK = 0,
  CVB_INVALID_ARGUMENT = 1,
  CVB_PRECONDITION = 2,
  CVB_OVERFLOW = 3,
  CVB_IO = 4,
  CVB_PARSE = 5,
  CVB_DICHOTOMY = 6,
  CVB_UNSUPPORTED = 7,
  CVB_INTERNAL = 8
} cvb_status;

typedef enum cvb_verdict { CVB_PASS = 0, CVB_FAIL = 1, CVB_VACUOUS = 2 } cvb_verdict;

/* Reduced slope p/q with q >= 0; infinity is 1/0. */
typedef struct cvb_slope {
  int64_t p;
  int64_t q;
} cvb_slope;

/* Surface S_{g,b}; for the word model b counts punctures. */
typedef struct cvb_surface {
  uint32_t genus;
  uint32_t boundaries;
} cvb_surface;

typedef struct cvb_farey_options {
  double tolerance;
  int sound_slack;     /* nonzero: adverse slack on model distances */
  int doubled_annulus; /* nonzero: i(x, A) counts boundary components */
  cvb_surface surface;
} cvb_farey_options;

typedef struct cvb_report cvb_report;
typedef struct cvb_psurface cvb_psurface;
typedef struct cvb_word cvb_word;
typedef struct cvb_experiment cvb_experiment;

/* ---- errors and memory ------------------------------------------------ */

CVB_API const char *cvb_last_error(void);
CVB_API const char *cvb_status_name(cvb_status status);
CVB_API const char *cvb_version(void);
CVB_API void cvb_free_string(char *s);

/* ---- constants -------------------------------------------------------- */

CVB_API cvb_status cvb_l_small(double p, double *out);
CVB_API cvb_status cvb_L_big(double p, double *out);
CVB_API cvb_status cvb_V(cvb_surface s, double k, double *out);
CVB_API cvb_status cvb_U(cvb_surface s, int64_t k, uint64_t P, double *out);
CVB_API cvb_status cvb_mainone_denominator(int64_t k, double *out);
/* Bounds on P_S as a JSON object. */
CVB_API cvb_status cvb_p_bounds_json(cvb_surface s, char **out_json);
/* family: "tight", "endpoint" or "pure-upper"; P = 0 selects the default bound. */
CVB_API cvb_status cvb_coefficients_json(cvb_surface s, int64_t k, const char *family, uint64_t P, char **out_json);
/* name: "l", "L", "V", "U", "mainone-denominator"; evaluates at p or k. */
CVB_API cvb_status cvb_constant_eval_json(const char *name, cvb_surface s, double arg, uint64_t P, char **out_json);
/* function: "l" or "L". */
CVB_API cvb_status cvb_constant_plot_svg(const char *function, int64_t from, int64_t to, char **out_svg);

/* ---- Farey model ------------------------------------------------------ */

CVB_API cvb_status cvb_slope_parse(const char *text, cvb_slope *out);
CVB_API cvb_status cvb_slope_format(cvb_slope s, char **out);
CVB_API cvb_status cvb_intersection(cvb_slope x, cvb_slope y, char **out_decimal);
CVB_API cvb_status cvb_distance(cvb_slope x, cvb_slope y, uint64_t *out);
CVB_API cvb_status cvb_annular_distance(cvb_slope core, cvb_slope x, cvb_slope y, char **out_decimal);
CVB_API cvb_status cvb_geodesic_json(cvb_slope x, cvb_slope y, char **out_json);
CVB_API cvb_status cvb_large_annuli_json(cvb_slope x, cvb_slope y, int64_t k, char **out_json);
CVB_API cvb_status cvb_twist_matrix_apply(cvb_slope core, int64_t n, cvb_slope x, cvb_slope *out);
/* slack: "raw", "minus1" or "plus1". */
CVB_API cvb_status cvb_script_s(cvb_slope x, cvb_slope y, int64_t k, const char *slack, double *out);

CVB_API cvb_farey_options cvb_farey_options_default(void);
/* theorem: "mainone", "igd" or "hl" (k ignored for "hl"). */
CVB_API cvb_status cvb_farey_check(const char *theorem, cvb_slope x, cvb_slope y, int64_t k,
                                   const cvb_farey_options *options, cvb_report **out);
CVB_API cvb_status cvb_lemma_annulus_check(cvb_slope core, cvb_slope x, cvb_slope y, int64_t n,
                                           const cvb_farey_options *options, cvb_report **out);

/* ---- reports ---------------------------------------------------------- */

CVB_API cvb_verdict cvb_report_verdict(const cvb_report *r);
CVB_API double cvb_report_lhs(const cvb_report *r);
CVB_API double cvb_report_rhs(const cvb_report *r);
CVB_API double cvb_report_margin(const cvb_report *r);
CVB_API cvb_status cvb_report_json(const cvb_report *r, char **out_json);
/* Value of an input or detail key; empty string when absent. */
CVB_API cvb_status cvb_report_field(const cvb_report *r, const char *key, char **out);
CVB_API void cvb_report_free(cvb_report *r);

/* ---- chains ----------------------------------------------------------- */

CVB_API cvb_status cvb_behrstock_validate(uint64_t d_xy_mu, uint64_t d_yx_mu, int *out_pass);
/* Collection JSON from the Farey model for the annuli above cutoff n. */
CVB_API cvb_status cvb_chains_farey_dataset_json(cvb_slope x, cvb_slope y, int64_t n, char **out_json);
/* mode: "annular" or "mixed"; anchor may be NULL. Either output may be NULL. */
CVB_API cvb_status cvb_chains_run_json(const char *collection_json, int64_t cutoff, const char *mode,
                                       const char *anchor, char **out_certificate, char **out_partition);

/* ---- words ------------------------------------------------------------ */

CVB_API cvb_status cvb_psurface_new(uint32_t genus, uint32_t punctures, cvb_psurface **out);
CVB_API void cvb_psurface_free(cvb_psurface *s);
CVB_API cvb_status cvb_word_parse(const cvb_psurface *s, const char *text, cvb_word **out);
CVB_API cvb_status cvb_word_from_slope(const cvb_psurface *s, cvb_slope slope, cvb_word **out);
CVB_API cvb_status cvb_word_format(const cvb_psurface *s, const cvb_word *w, char **out);
CVB_API size_t cvb_word_length(const cvb_word *w);
CVB_API int cvb_word_equal(const cvb_word *a, const cvb_word *b);
CVB_API void cvb_word_free(cvb_word *w);
CVB_API cvb_status cvb_word_intersection(const cvb_psurface *s, const cvb_word *a, const cvb_word *b, uint64_t *out);
CVB_API cvb_status cvb_word_self_intersection(const cvb_psurface *s, const cvb_word *w, uint64_t *out);
/* T_core^n(w); core must be simple and primitive. */
CVB_API cvb_status cvb_word_twist(const cvb_psurface *s, const cvb_word *core, int64_t n, const cvb_word *w,
                                  cvb_word **out);
CVB_API cvb_status cvb_short_simple_curves_json(const cvb_psurface *s, uint32_t max_length, char **out_json);

/* ---- mapping classes -------------------------------------------------- */

/* surface is NULL for matrix specs; phi is "[[a,b],[c,d]]" or
 * "twist(core=WORD,power=P);...". */
CVB_API cvb_status cvb_mcg_supports_json(const cvb_surface *surface, const char *phi, int64_t k, char **out_json);
/* which: "lower" or "upper". */
CVB_API cvb_status cvb_mcg_pure_check(const cvb_surface *surface, const char *phi, const char *x, int64_t n,
                                      int64_t k, const char *which, int sound_slack, cvb_report **out);
/* x and core are slopes when surface is NULL, words otherwise. */
CVB_API cvb_status cvb_mcg_twist_check(const cvb_surface *surface, const char *core, const char *x, int64_t n,
                                       cvb_report **out);
/* which: "tight" or "endpoint". */
CVB_API cvb_status cvb_mcg_geodesic_check(cvb_slope x, cvb_slope y, int64_t k, const char *which,
                                          const int64_t *picks, size_t pick_count, cvb_report **out);

/* ---- experiments ------------------------------------------------------ */

CVB_API cvb_status cvb_experiment_new(cvb_experiment **out);
CVB_API void cvb_experiment_free(cvb_experiment *e);
/* Keys as in the config file: theorem, surface, k, samples, seed, sampler,
 * slack, workers, max-denominator, max-coeff, max-len, pair, out. */
CVB_API cvb_status cvb_experiment_set(cvb_experiment *e, const char *key, const char *value);
CVB_API cvb_status cvb_experiment_load_config(cvb_experiment *e, const char *path);
/* Runs the sweep; writes output files when `out` is set. */
CVB_API cvb_status cvb_experiment_run(cvb_experiment *e, uint64_t *out_failures);
CVB_API cvb_status cvb_experiment_summary_json(const cvb_experiment *e, char **out_json);
/* format: "json" or "csv". */
CVB_API cvb_status cvb_experiment_reports(const cvb_experiment *e, const char *format, char **out);

#ifdef __cplusplus
}
#endif

#endif /* CURVEBOUND_H */
