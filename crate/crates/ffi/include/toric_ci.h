#ifndef TORIC_CI_H
#define TORIC_CI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum ToricCiStatus {
  TORIC_CI_STATUS_OK = 0,
  // A required pointer was null or a string was not UTF-8.
  TORIC_CI_STATUS_INVALID_ARGUMENT = 1,
  // Malformed or unsupported input, including non-pointed cones.
  TORIC_CI_STATUS_INPUT = 2,
  // A work or size limit was hit.
  TORIC_CI_STATUS_BUDGET = 3,
  // The library panicked; the handle involved should not be reused.
  TORIC_CI_STATUS_INTERNAL = 4,
} ToricCiStatus;

// Opaque generator set.
typedef struct ToricCiInstance ToricCiInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds an instance from `rows × cols` integers in row-major order.
//
// # Safety
// `data` must point to `rows * cols` readable values; `out` must be writable.
enum ToricCiStatus toric_ci_instance_from_rows(const int64_t *data,
                                               size_t rows,
                                               size_t cols,
                                               struct ToricCiInstance **out);

// Parses an instance in the text or JSON instance format.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum ToricCiStatus toric_ci_instance_parse(const char *text, struct ToricCiInstance **out);

// Releases an instance. Null is ignored.
//
// # Safety
// `inst` must come from this library and not be used afterwards.
void toric_ci_instance_free(struct ToricCiInstance *inst);

// Number of generators, or 0 for a null handle.
//
// # Safety
// `inst` must be null or a live handle.
size_t toric_ci_instance_generators(const struct ToricCiInstance *inst);

// Ambient dimension, or 0 for a null handle.
//
// # Safety
// `inst` must be null or a live handle.
size_t toric_ci_instance_ambient(const struct ToricCiInstance *inst);

// Decides whether the semigroup is a complete intersection.
// `max_gens` of 0 selects the default limit.
//
// # Safety
// `inst` must be a live handle and `out` writable.
enum ToricCiStatus toric_ci_is_ci(const struct ToricCiInstance *inst, size_t max_gens, bool *out);

// Decides whether the cone is a complete intersection cone.
// `max_gens` of 0 selects the default limit.
//
// # Safety
// `inst` must be a live handle and `out` writable.
enum ToricCiStatus toric_ci_is_ci_cone(const struct ToricCiInstance *inst,
                                       size_t max_gens,
                                       bool *out);

// Number of extreme rays of the cone.
//
// # Safety
// `inst` must be a live handle and `out` writable.
enum ToricCiStatus toric_ci_extreme_ray_count(const struct ToricCiInstance *inst, size_t *out);

// Full analysis report as canonical JSON. With `oracle` set the toric-ideal
// oracle runs under its default limits.
//
// # Safety
// `inst` must be a live handle and `out` writable.
enum ToricCiStatus toric_ci_analyze_json(const struct ToricCiInstance *inst,
                                         bool oracle,
                                         char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void toric_ci_string_free(char *s);

// Message for the last failed call on this thread, or null.
// The pointer stays valid until the next library call on the same thread.
const char *toric_ci_last_error(void);

// Library version as a static string.
const char *toric_ci_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIC_CI_H */
