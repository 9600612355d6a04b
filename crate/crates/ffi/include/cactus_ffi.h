#ifndef CACTUS_FFI_H
#define CACTUS_FFI_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum CactusCheck {
  CACTUS_CHECK_SQUARES = 0,
  CACTUS_CHECK_EDGES = 1,
  CACTUS_CHECK_CUBES = 2,
  CACTUS_CHECK_MEDIAN = 3,
  CACTUS_CHECK_SQUARE_NORMAL_FORMS = 4,
} CactusCheck;

typedef enum CactusFamily {
  CACTUS_FAMILY_CACTUS = 0,
  CACTUS_FAMILY_AFFINE = 1,
} CactusFamily;

typedef enum CactusStatus {
  CACTUS_STATUS_OK = 0,
  CACTUS_STATUS_NULL_POINTER = 1,
  CACTUS_STATUS_INVALID_UTF8 = 2,
  CACTUS_STATUS_INVALID_ARGUMENT = 3,
  CACTUS_STATUS_BUDGET_EXCEEDED = 4,
  CACTUS_STATUS_PANIC = 5,
} CactusStatus;

/**
 * Opaque ball of the Cayley graph.
 */
typedef struct CactusBall CactusBall;

/**
 * Message of the last failed call on this thread, or NULL. Owned by the
 * library and valid until the next failing call on the same thread.
 */
const char *cactus_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cactus_string_free(char *s);

/**
 * Normal form of `word` (syntax `p,q;p,q;...`). The identity is "".
 *
 * # Safety
 * `word` must be a NUL-terminated string; `out` must be writable.
 */
enum CactusStatus cactus_normalize(enum CactusFamily family,
                                   uint32_t n,
                                   const char *word,
                                   char **out);

/**
 * Whether two words represent the same element.
 *
 * # Safety
 * `a`, `b` must be NUL-terminated strings; `out` must be writable.
 */
enum CactusStatus cactus_equal(enum CactusFamily family,
                               uint32_t n,
                               const char *a,
                               const char *b,
                               bool *out);

/**
 * Builds the ball of the given radius. `max_vertices` of 0 means the default
 * budget.
 *
 * # Safety
 * `out` must be writable. The ball must be released with [`cactus_ball_free`].
 */
enum CactusStatus cactus_ball_new(enum CactusFamily family,
                                  uint32_t n,
                                  uint32_t radius,
                                  uintptr_t max_vertices,
                                  struct CactusBall **out);

/**
 * # Safety
 * `ball` must come from [`cactus_ball_new`] and not have been freed. NULL is ignored.
 */
void cactus_ball_free(struct CactusBall *ball);

/**
 * # Safety
 * `ball` must be a live ball; `out` must be writable.
 */
enum CactusStatus cactus_ball_vertex_count(const struct CactusBall *ball, uintptr_t *out);

/**
 * Writes up to `cap` sphere sizes into `buf` and the full count (radius + 1)
 * into `len`. Pass `cap = 0` to query the length.
 *
 * # Safety
 * `buf` must have room for `cap` entries; `len` must be writable.
 */
enum CactusStatus cactus_ball_sphere_sizes(const struct CactusBall *ball,
                                           uintptr_t *buf,
                                           uintptr_t cap,
                                           uintptr_t *len);

/**
 * Ball as JSON (vertices with depth, labelled edges).
 *
 * # Safety
 * `ball` must be a live ball; `out` must be writable.
 */
enum CactusStatus cactus_ball_export_json(const struct CactusBall *ball, char **out);

/**
 * Runs a structural check. `passed` receives the verdict; `report` (may be
 * NULL) receives the full report as JSON.
 *
 * # Safety
 * `ball` must be a live ball; `passed` must be writable; `report` NULL or writable.
 */
enum CactusStatus cactus_verify(const struct CactusBall *ball,
                                enum CactusCheck check,
                                uint32_t depth,
                                bool *passed,
                                char **report);

/**
 * Renders an AJ_3 ball in the Poincaré disk as SVG. `highlight` (may be
 * NULL) names a vertex whose geodesics from e are drawn.
 *
 * # Safety
 * `ball` must be a live ball; `highlight` NULL or NUL-terminated; `out` writable.
 */
enum CactusStatus cactus_embed_svg(const struct CactusBall *ball,
                                   const char *highlight,
                                   char **out);

#endif  /* CACTUS_FFI_H */
