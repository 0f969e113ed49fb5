/* dilwalk: metric spaces with dilations and random walks.
 *
 * C89-compatible shared-library surface over the C++ core. All objects
 * are opaque handles; all functions return a dw_status, with results
 * written through out-parameters. Points are arrays of doubles of the
 * owning space's dimension. Handles are not thread-safe individually,
 * but distinct handles may be used from distinct threads.
 */
#ifndef DILWALK_H
#define DILWALK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dw_status {
  DW_OK = 0,
  DW_ERR_INVALID_ARG = 1, /* bad parameter (alpha, h, n, eps, radius, ...) */
  DW_ERR_WRONG_KIND = 2,  /* operation not defined on this space kind */
  DW_ERR_SAMPLER = 3,     /* rejection cap exceeded */
  DW_ERR_CONFIG = 4,      /* invalid experiment config */
  DW_ERR_RUNTIME = 5      /* experiment-level invariant violation */
} dw_status;

typedef struct dw_space dw_space;
typedef struct dw_dilation dw_dilation;
typedef struct dw_rng dw_rng;

const char* dw_version(void);
const char* dw_strerror(dw_status status);

/* Message for the most recent failing call on this thread. */
const char* dw_last_error(void);

/* --- spaces ------------------------------------------------------- */

/* kind_spec: "euclidean:N" | "heisenberg" | "snowflake:ALPHA"
 *          | "grid:H[:N[:WINDOW]]" */
dw_status dw_space_create(const char* kind_spec, dw_space** out);
void dw_space_destroy(dw_space* space);
int dw_space_dim(const dw_space* space);

dw_status dw_space_distance(const dw_space* space, const double* p,
                            const double* q, double* out);
dw_status dw_space_ball_measure(const dw_space* space, const double* center,
                                double radius, double* out);
dw_status dw_space_sample_ball(const dw_space* space, const double* center,
                               double radius, dw_rng* rng, double* out_point);

/* Heisenberg group operations; DW_ERR_WRONG_KIND elsewhere. */
dw_status dw_heis_mul(const dw_space* space, const double* p, const double* q,
                      double* out);
dw_status dw_heis_inv(const dw_space* space, const double* p, double* out);
dw_status dw_heis_dil(const dw_space* space, double eps, const double* p,
                      double* out);

/* Canonical planar placement of a triangle with the given side lengths.
 * out_coords = {Ax, Ay, Bx, By, Cx, Cy}. */
dw_status dw_triangle_realization(double d_xy, double d_yz, double d_zx,
                                  double* out_coords);

/* --- dilation structures ------------------------------------------ */

/* The space must outlive the dilation structure. */
dw_status dw_dilation_create(const dw_space* space, dw_dilation** out);
void dw_dilation_destroy(dw_dilation* ds);

dw_status dw_dilate(const dw_dilation* ds, const double* x, double eps,
                    const double* u, double* out);
dw_status dw_rescaled_distance(const dw_dilation* ds, const double* x,
                               double eps, const double* u, const double* v,
                               double* out);
dw_status dw_relative_dilation(const dw_dilation* ds, const double* x,
                               double eps, const double* u, double mu,
                               const double* v, double* out);
dw_status dw_approx_translation(const dw_dilation* ds, const double* x,
                                double eps, const double* u, const double* v,
                                double* out);

/* --- deterministic rng streams ------------------------------------ */

/* Sub-stream derived from (seed, label); identical across runs,
 * platforms and thread schedules. */
dw_rng* dw_rng_create(uint64_t seed, const char* label);
void dw_rng_destroy(dw_rng* rng);
double dw_rng_uniform(dw_rng* rng);

/* --- experiments runner ------------------------------------------- */

/* config_json: flat JSON object (keys: experiment, space, eps_ladder,
 * samples, pairs, steps, trajectories, partition_cells, seed, out,
 * format, scan, candidate, base_point). Writes the output file plus a
 * manifest "<out>.manifest.json". On failure the diagnostic is copied
 * into err_buf (if non-NULL). */
dw_status dw_run_experiment(const char* config_json, char* err_buf,
                            size_t err_len);

#ifdef __cplusplus
}
#endif

#endif /* DILWALK_H */
