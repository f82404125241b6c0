#ifndef HILBCHOW_H
#define HILBCHOW_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_UTF8 = 2,
  HC_STATUS_INVALID_INPUT = 3,
  HC_STATUS_COMPUTATION = 4,
  HC_STATUS_BUFFER_TOO_SMALL = 5,
  HC_STATUS_PANIC = 6,
} HcStatus;

/**
 * The equivariant Chow ring of a Hilbert scheme of points, as a graded
 * submodule of the ring of tuples of polynomials on the fixed points.
 */
typedef struct HcChow HcChow;

/**
 * A smooth projective toric surface.
 */
typedef struct HcSurface HcSurface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Valid
 * until the next call on this thread.
 */
const char *hc_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void hc_string_free(char *s);

/**
 * Builds a surface from a preset (`P2`, `P1xP1`, `F<a>`), a JSON list of
 * rays, or a path to a fan file.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HcStatus hc_surface_new(const char *spec, struct HcSurface **out);

/**
 * # Safety
 * `surface` must be null or a handle from [`hc_surface_new`].
 */
void hc_surface_free(struct HcSurface *surface);

/**
 * Number of torus-fixed points of the surface, or 0 for a null handle.
 *
 * # Safety
 * `surface` must be null or a live handle.
 */
size_t hc_surface_num_points(const struct HcSurface *surface);

/**
 * The fixed points of the Hilbert scheme of `points` points as a JSON
 * array of `{id, parts, weights}`.
 *
 * # Safety
 * `surface` must be a live handle and `out` a valid pointer.
 */
enum HcStatus hc_fixed_points_json(const struct HcSurface *surface, uint32_t points, char **out);

/**
 * Betti numbers `b_0, b_2, …` counted from tangent weights at the fixed
 * points. Writes the length to `len` even when `capacity` is too small.
 *
 * # Safety
 * `surface` must be a live handle, `values` valid for `capacity` writes.
 */
enum HcStatus hc_betti(const struct HcSurface *surface,
                       uint32_t points,
                       size_t *values,
                       size_t capacity,
                       size_t *len);

/**
 * Computes the equivariant Chow ring in degrees `0..=max_degree`.
 *
 * # Safety
 * `surface` must be a live handle and `out` a valid pointer.
 */
enum HcStatus hc_chow_new(const struct HcSurface *surface,
                          uint32_t points,
                          uint32_t max_degree,
                          struct HcChow **out);

/**
 * # Safety
 * `chow` must be null or a handle from [`hc_chow_new`].
 */
void hc_chow_free(struct HcChow *chow);

/**
 * Dimension over `Q` of the degree-`k` piece.
 *
 * # Safety
 * `chow` must be a live handle and `out` a valid pointer.
 */
enum HcStatus hc_chow_piece_dim(const struct HcChow *chow, uint32_t k, size_t *out);

/**
 * Betti numbers of the ordinary Chow ring, from the computed module.
 *
 * # Safety
 * As for [`hc_betti`].
 */
enum HcStatus hc_chow_betti(const struct HcChow *chow,
                            size_t *values,
                            size_t capacity,
                            size_t *len);

/**
 * The module as JSON, with bases of each piece as rational strings.
 *
 * # Safety
 * `chow` must be a live handle and `out` a valid pointer.
 */
enum HcStatus hc_chow_json(const struct HcChow *chow, char **out);

/**
 * Checks a relation file (JSON text) against the computed ring. A null
 * `labels_json` selects the bundled labels where they apply. `passed` is
 * set to whether every relation (in some reading) holds and the
 * relations cut out exactly the ring; `report` (optional) receives the
 * JSON report.
 *
 * # Safety
 * `chow` must be a live handle, `relations_json` a NUL-terminated string,
 * `labels_json` null or NUL-terminated, `passed` valid, `report` null or
 * valid.
 */
enum HcStatus hc_chow_verify(const struct HcChow *chow,
                             const char *relations_json,
                             const char *labels_json,
                             bool *passed,
                             char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HILBCHOW_H */
