#ifndef FRACLAP_H
#define FRACLAP_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FraclapStatus {
  FRACLAP_STATUS_OK = 0,
  FRACLAP_STATUS_NULL_POINTER = 1,
  FRACLAP_STATUS_DOMAIN = 2,
  FRACLAP_STATUS_INDEX = 3,
  FRACLAP_STATUS_DIMENSION = 4,
  FRACLAP_STATUS_NO_CONVERGENCE = 5,
  FRACLAP_STATUS_SINGULAR = 6,
  FRACLAP_STATUS_RULE_SIZE = 7,
  FRACLAP_STATUS_NON_FINITE = 8,
  FRACLAP_STATUS_KIND = 9,
  FRACLAP_STATUS_SHAPE = 10,
  FRACLAP_STATUS_CONFIG = 11,
  FRACLAP_STATUS_BUFFER_TOO_SMALL = 12,
  FRACLAP_STATUS_PANIC = 13,
} FraclapStatus;

/**
 * Opaque assembled diffusion system.
 */
typedef struct FraclapDiffusion FraclapDiffusion;

/**
 * Opaque radial quadrature rule.
 */
typedef struct FraclapQuadrature FraclapQuadrature;

/**
 * Scalar field callback: `x` points at `dim` coordinates.
 */
typedef double (*FraclapField)(const double *x, size_t dim, void *user);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *fraclap_last_error(void);

/**
 * Eigenvalue `d_{n,l}` of the weighted basis.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum FraclapStatus fraclap_eigenvalue(double alpha, size_t dim, size_t n, size_t l, double *out);

/**
 * Builds a `k`-point Gauss rule for `(1-r²)^{α/2}` on `[0,1]`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum FraclapStatus fraclap_quadrature_new(double alpha,
                                          size_t k,
                                          size_t fine_n,
                                          struct FraclapQuadrature **out);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `q` must be null or a live handle.
 */
size_t fraclap_quadrature_len(const struct FraclapQuadrature *q);

/**
 * Copies nodes and weights into buffers of length `cap` each.
 *
 * # Safety
 * `q` must be a live handle; `nodes` and `weights` valid for `cap` writes.
 */
enum FraclapStatus fraclap_quadrature_copy(const struct FraclapQuadrature *q,
                                           double *nodes,
                                           double *weights,
                                           size_t cap);

/**
 * # Safety
 * `q` must be null or a handle not yet freed.
 */
void fraclap_quadrature_free(struct FraclapQuadrature *q);

/**
 * Evaluates `(-Δ)^{α/2} u` on a tensor grid from the degree-`(n_max,
 * l_max)` expansion of `u`. `angles` holds `(theta, phi)` per direction
 * (`phi` is ignored in 2D); `out` receives `n_radii * n_dirs` values,
 * radius-major.
 *
 * # Safety
 * Pointers must be valid for the stated lengths; `field` must be safe to call
 * with `user` at points inside the unit ball.
 */
enum FraclapStatus fraclap_apply(double alpha,
                                 size_t dim,
                                 size_t n_max,
                                 size_t l_max,
                                 FraclapField u,
                                 void *user,
                                 const double *radii,
                                 size_t n_radii,
                                 const double *angles,
                                 size_t n_dirs,
                                 double *out);

/**
 * Solves `(-Δ)^{α/2} u = f` in the unit ball, `u = 0` outside. Grid and
 * output layout as in [`fraclap_apply`].
 *
 * # Safety
 * As for [`fraclap_apply`].
 */
enum FraclapStatus fraclap_solve(double alpha,
                                 size_t dim,
                                 size_t n_max,
                                 size_t l_max,
                                 FraclapField f,
                                 void *user,
                                 const double *radii,
                                 size_t n_radii,
                                 const double *angles,
                                 size_t n_dirs,
                                 double *out);

/**
 * Assembles the implicit Euler system for the radial 3D heat equation
 * with `n_modes` modes and step `dt`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum FraclapStatus fraclap_diffusion_new(double alpha,
                                         size_t n_modes,
                                         double dt,
                                         struct FraclapDiffusion **out);

/**
 * Coefficients of the initial condition `(1-r²)^{α/2}`, `n_modes` values.
 *
 * # Safety
 * `s` must be a live handle and `c` valid for `len` writes.
 */
enum FraclapStatus fraclap_diffusion_initial(const struct FraclapDiffusion *s,
                                             double *c,
                                             size_t len);

/**
 * Advances the coefficients in `c` (length `n_modes`) by `steps` steps.
 *
 * # Safety
 * `s` must be a live handle and `c` valid for `len` reads and writes.
 */
enum FraclapStatus fraclap_diffusion_step(const struct FraclapDiffusion *s,
                                          double *c,
                                          size_t len,
                                          size_t steps);

/**
 * Evaluates `u(r)` for coefficients `c` at `n_radii` radii.
 *
 * # Safety
 * `s` must be a live handle; pointers valid for the stated lengths.
 */
enum FraclapStatus fraclap_diffusion_profile(const struct FraclapDiffusion *s,
                                             const double *c,
                                             size_t len,
                                             const double *radii,
                                             size_t n_radii,
                                             double *out);

/**
 * # Safety
 * `s` must be null or a handle not yet freed.
 */
void fraclap_diffusion_free(struct FraclapDiffusion *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRACLAP_H */
