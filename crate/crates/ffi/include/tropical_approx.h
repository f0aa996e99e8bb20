#ifndef TROPICAL_APPROX_H
#define TROPICAL_APPROX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TaMethod {
  TA_METHOD_CYCLIC = 0,
  TA_METHOD_POWER = 1,
} TaMethod;

typedef enum TaStatus {
  TA_STATUS_OK = 0,
  TA_STATUS_NULL_POINTER = 1,
  TA_STATUS_INVALID_ARGUMENT = 2,
  TA_STATUS_DIMENSION_MISMATCH = 3,
  /*
   No finite answer exists: infinite distance, point inside, nothing to separate.
   */
  TA_STATUS_INFEASIBLE = 4,
  TA_STATUS_ITERATION_CAP = 5,
  TA_STATUS_PANIC = 6,
} TaStatus;

/*
 Half-space `{h | a h >= b h}`.
 */
typedef struct TaHalfSpace TaHalfSpace;

/*
 Semimodule spanned by a finite list of generators.
 */
typedef struct TaSemimodule TaSemimodule;

/*
 Two-sided system `A x >= B x`.
 */
typedef struct TaSystem TaSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failed call on this thread, or null. The
 pointer stays valid until the next call into this library on the same
 thread.
 */
const char *ta_last_error_message(void);

/*
 Hilbert's projective distance between `x` and `y`.

 # Safety
 `x` and `y` point to `n` readable doubles, `out` to one writable double.
 */
enum TaStatus ta_hilbert_distance(const double *x, const double *y, size_t n, double *out);

/*
 Builds the half-space `{h | a h >= b h}`; `+INFINITY` coefficients are rejected.

 # Safety
 `a` and `b` point to `n` readable doubles, `out` to a writable pointer.
 */
enum TaStatus ta_halfspace_new(const double *a,
                               const double *b,
                               size_t n,
                               struct TaHalfSpace **out);

/*
 # Safety
 `h` is null or was returned by [`ta_halfspace_new`] and not yet freed.
 */
void ta_halfspace_free(struct TaHalfSpace *h);

/*
 Dimension of the half-space, or 0 for a null handle.

 # Safety
 `h` is null or a live handle.
 */
size_t ta_halfspace_dim(const struct TaHalfSpace *h);

/*
 Writes 1 to `out` when `x` lies in the half-space, 0 otherwise.

 # Safety
 `h` is a live handle, `x` points to `n` readable doubles, `out` to one writable int.
 */
enum TaStatus ta_halfspace_contains(const struct TaHalfSpace *h,
                                    const double *x,
                                    size_t n,
                                    int32_t *out);

/*
 Greatest point of the half-space below `x`, written to `out`.

 # Safety
 `h` is a live handle, `x` points to `n` readable doubles, `out` to `n` writable doubles.
 */
enum TaStatus ta_halfspace_project(const struct TaHalfSpace *h,
                                   const double *x,
                                   size_t n,
                                   double *out);

/*
 Distance from `x` to the half-space.

 # Safety
 `h` is a live handle, `x` points to `n` readable doubles, `out` to one writable double.
 */
enum TaStatus ta_halfspace_distance(const struct TaHalfSpace *h,
                                    const double *x,
                                    size_t n,
                                    double *out);

/*
 Builds the semimodule spanned by `q` generators of length `n`, stored
 row-major in `generators`. `q` may be 0, in which case `generators` may be null.

 # Safety
 `generators` points to `q * n` readable doubles, `out` to a writable pointer.
 */
enum TaStatus ta_semimodule_new(const double *generators,
                                size_t q,
                                size_t n,
                                struct TaSemimodule **out);

/*
 # Safety
 `v` is null or was returned by [`ta_semimodule_new`] and not yet freed.
 */
void ta_semimodule_free(struct TaSemimodule *v);

/*
 Greatest element of the semimodule below `x`, written to `out`.

 # Safety
 `v` is a live handle, `x` points to `n` readable doubles, `out` to `n` writable doubles.
 */
enum TaStatus ta_semimodule_project(const struct TaSemimodule *v,
                                    const double *x,
                                    size_t n,
                                    double *out);

/*
 Distance from `x` to the semimodule.

 # Safety
 `v` is a live handle, `x` points to `n` readable doubles, `out` to one writable double.
 */
enum TaStatus ta_semimodule_distance(const struct TaSemimodule *v,
                                     const double *x,
                                     size_t n,
                                     double *out);

/*
 Builds `A x >= B x` from two row-major `p x n` matrices.

 # Safety
 `a` and `b` point to `p * n` readable doubles, `out` to a writable pointer.
 */
enum TaStatus ta_system_new(const double *a,
                            const double *b,
                            size_t p,
                            size_t n,
                            struct TaSystem **out);

/*
 # Safety
 `s` is null or was returned by [`ta_system_new`] and not yet freed.
 */
void ta_system_free(struct TaSystem *s);

/*
 Greatest solution below `u`, written to `out`. `max_iterations` of 0
 keeps the default cap. `iterations` may be null.

 # Safety
 `s` is a live handle, `u` points to `n` readable doubles, `out` to `n`
 writable doubles, `iterations` is null or writable.
 */
enum TaStatus ta_system_solve(const struct TaSystem *s,
                              enum TaMethod method,
                              const double *u,
                              size_t n,
                              size_t max_iterations,
                              double *out,
                              size_t *iterations);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TROPICAL_APPROX_H */
