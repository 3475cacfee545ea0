/* salrank: salient-object ranking dataset synthesis and evaluation.
 *
 * C interface to the salrank core. All functions return a status code;
 * on failure salrank_last_error() describes the most recent error of the
 * calling thread. Paths are UTF-8. Unless noted otherwise, output files
 * are byte-deterministic for a given input and library version.
 */
#ifndef SALRANK_H
#define SALRANK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum salrank_status {
    SALRANK_OK = 0,
    SALRANK_ERR_INVALID_ARGUMENT = 1,
    SALRANK_ERR_IO = 2,
    SALRANK_ERR_FORMAT = 3,
    SALRANK_ERR_INTEGRITY = 4,
    SALRANK_ERR_INTERNAL = 5
} salrank_status;

/* Library version as "major.minor.patch". Static storage, do not free. */
const char* salrank_version(void);

/* Message for the calling thread's most recent failure, or "" if none. */
const char* salrank_last_error(void);

/* ---- generation config ------------------------------------------------- */

typedef struct salrank_config salrank_config;

/* preset is "v1" or "v2". Returns NULL on unknown preset. */
salrank_config* salrank_config_new(const char* preset);
void salrank_config_free(salrank_config* cfg);

/* Keys: sigma, mu, xi, ell, gamma, alpha1, alpha2, alpha.
 * mu and xi are truncated to integers and must be positive. */
salrank_status salrank_config_set(salrank_config* cfg, const char* key, double value);

/* setting is "relative" or "absolute". */
salrank_status salrank_config_set_setting(salrank_config* cfg, const char* setting);

/* ---- pipeline entry points --------------------------------------------- */

/* Synthesize ranked ground truth for every image in a manifest.
 * manifest_path: JSON manifest listing per-image inputs.
 * root: directory that relative manifest paths resolve against; NULL or ""
 *       means the manifest's own directory.
 * out_dir: receives <id>.png, <id>.rank.json, stack slices and report.json.
 * threads <= 0 selects the hardware default. */
salrank_status salrank_generate(const salrank_config* cfg,
                                const char* manifest_path,
                                const char* root,
                                const char* out_dir,
                                int threads);

/* Score predicted saliency maps against ranked ground truth.
 * mode: "avg", "pow" or "max"; alpha is the exponent for "pow". */
salrank_status salrank_eval_rank(const char* pred_dir,
                                 const char* gt_dir,
                                 const char* instances_dir,
                                 const char* mode,
                                 double alpha,
                                 const char* report_path,
                                 int threads);

/* Binary detection metrics against per-image observer mask sets.
 * curves_dir may be NULL to skip per-image curve CSVs. */
salrank_status salrank_eval_detect(const char* pred_dir,
                                   const char* observers_dir,
                                   double beta_sq,
                                   const char* report_path,
                                   const char* curves_dir,
                                   int threads);

/* Re-score a reference corpus across values of one scoring parameter.
 * axis: "alpha" or "sigma" (the sigma axis also sets mu to round(7*sigma)).
 * values: axis values, n_values of them. Writes one CSV row per value. */
salrank_status salrank_sweep(const salrank_config* cfg,
                             const char* manifest_path,
                             const char* root,
                             const char* axis,
                             const double* values,
                             size_t n_values,
                             const char* csv_path,
                             int threads);

/* Drop `remove_count` observers at random and measure ranking agreement
 * against the full-observer ranking, averaged over `trials` draws.
 * csv_path may be NULL to skip the per-trial table; mean_sor_out may be
 * NULL when only the side effects are wanted. */
salrank_status salrank_ablate(const char* manifest_path,
                              const char* root,
                              int remove_count,
                              int trials,
                              uint64_t seed,
                              const char* csv_path,
                              double* mean_sor_out,
                              int threads);

/* Tabulate rank-position and instance-size statistics of a generated
 * corpus directory (the out_dir of salrank_generate). */
salrank_status salrank_stats(const char* corpus_dir, const char* csv_path);

/* Validate a stored stack <stem>.slice1.png .. <stem>.sliceK.png:
 * binary slices, equal dimensions, each slice contained in the next. */
salrank_status salrank_validate_stack(const char* stem);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SALRANK_H */
