#ifndef HYPERELLIPTIC_H
#define HYPERELLIPTIC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum HlStatus {
  HL_STATUS_OK = 0,
  HL_STATUS_NULL_ARGUMENT = 1,
  HL_STATUS_INVALID_UTF8 = 2,
  HL_STATUS_PARSE = 3,
  HL_STATUS_INVALID_INPUT = 4,
  HL_STATUS_FIELD_MISMATCH = 5,
  HL_STATUS_ANCHOR_MISMATCH = 6,
  HL_STATUS_DEGENERATE = 7,
  HL_STATUS_NOT_ON_JACOBIAN = 8,
  HL_STATUS_ARITHMETIC = 9,
  HL_STATUS_PANIC = 10,
} HlStatus;

/**
 * A curve `y^2 = f(x)` with its field.
 */
typedef struct HlCurve HlCurve;

/**
 * A point of `C^{3g}`.
 */
typedef struct HlPoint HlPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null.
 * The pointer stays valid until the next call into the library.
 */
const char *hl_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void hl_string_free(char *s);

/**
 * Parses a curve object `{"genus", "field", "lambda"}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum HlStatus hl_curve_from_json(const char *json, struct HlCurve **out);

/**
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum HlStatus hl_curve_to_json(const struct HlCurve *curve, char **out);

/**
 * Genus of the curve, or 0 for a null handle.
 *
 * # Safety
 * `curve` must be null or a live handle.
 */
size_t hl_curve_genus(const struct HlCurve *curve);

/**
 * # Safety
 * `curve` must be null or a handle from this library, not yet freed.
 */
void hl_curve_free(struct HlCurve *curve);

/**
 * Parses a point object over `curve`'s field and checks it lies over `curve`.
 *
 * # Safety
 * `curve` must be a live handle, `json` a nul-terminated string and `out` writable.
 */
enum HlStatus hl_point_from_json(const struct HlCurve *curve,
                                 const char *json,
                                 struct HlPoint **out);

/**
 * # Safety
 * `point` must be a live handle; `out` must be writable.
 */
enum HlStatus hl_point_to_json(const struct HlPoint *point, char **out);

/**
 * # Safety
 * `point` must be null or a handle from this library, not yet freed.
 */
void hl_point_free(struct HlPoint *point);

/**
 * `a * b`. Fails with [`HlStatus::Degenerate`] off the generic chart.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum HlStatus hl_star(const struct HlPoint *a, const struct HlPoint *b, struct HlPoint **out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum HlStatus hl_invert(const struct HlPoint *a, struct HlPoint **out);

/**
 * The curve a point lies over.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum HlStatus hl_anchor(const struct HlPoint *a, struct HlCurve **out);

/**
 * Divisor-class sum by Cantor's algorithm, as JSON: a point object when the
 * result has full degree, otherwise `{"divisor": {"u": [...], "v": [...]}}`.
 *
 * # Safety
 * All handles must be live; `out` must be writable.
 */
enum HlStatus hl_cantor_add(const struct HlCurve *curve,
                            const struct HlPoint *a,
                            const struct HlPoint *b,
                            char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERELLIPTIC_H */
