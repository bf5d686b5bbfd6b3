#ifndef BOCAL_H
#define BOCAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BocalPdKind {
  BOCAL_PD_KIND_FINITE = 0,
  BOCAL_PD_KIND_INFINITE_CERTIFIED = 1,
  // The cutoff was reached; the value is a lower bound.
  BOCAL_PD_KIND_AT_LEAST = 2,
} BocalPdKind;

typedef enum BocalStatus {
  BOCAL_STATUS_OK = 0,
  BOCAL_STATUS_NULL_POINTER = 1,
  BOCAL_STATUS_INVALID_UTF8 = 2,
  BOCAL_STATUS_PARSE = 3,
  BOCAL_STATUS_INVALID = 4,
  BOCAL_STATUS_PARAMETER_OUT_OF_RANGE = 5,
  BOCAL_STATUS_ALGEBRA = 6,
  BOCAL_STATUS_MODULE = 7,
  BOCAL_STATUS_COMMAND = 8,
  BOCAL_STATUS_OUT_OF_RANGE = 9,
  BOCAL_STATUS_PANIC = 10,
} BocalStatus;

// A finite-dimensional algebra.
typedef struct BocalAlgebra BocalAlgebra;

// A right module over an algebra handle.
typedef struct BocalModule BocalModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call on this thread.
const char *bocal_last_error(void);

// Builds a corpus entry such as `"family"` or `"trivial-loop(3)"`. `field_name` is
// `"Q"`, a prime such as `"101"`, or null for Q.
//
// # Safety
// `name` and `field_name` must be null or NUL-terminated; `out` must be writable.
enum BocalStatus bocal_algebra_from_corpus(const char *name,
                                           const char *field_name,
                                           struct BocalAlgebra **out);

// Parses an algebra file held in memory and builds its root algebra.
//
// # Safety
// `json` must be NUL-terminated; `out` must be writable.
enum BocalStatus bocal_algebra_from_json(const char *json, struct BocalAlgebra **out);

// # Safety
// `a` must come from this library and not be used afterwards.
void bocal_algebra_free(struct BocalAlgebra *a);

// # Safety
// `a` must be a live handle; `out` must be writable.
enum BocalStatus bocal_algebra_dim(const struct BocalAlgebra *a, size_t *out);

// # Safety
// `a` must be a live handle; `out` must be writable.
enum BocalStatus bocal_algebra_num_vertices(const struct BocalAlgebra *a, size_t *out);

// # Safety
// `a` must be a live handle; `out` must be writable.
enum BocalStatus bocal_algebra_loewy_length(const struct BocalAlgebra *a, size_t *out);

// Global dimension from the simples, computing at most `cutoff` syzygies each.
//
// # Safety
// `a` must be a live handle; `kind` and `value` must be writable.
enum BocalStatus bocal_algebra_gl_dim(const struct BocalAlgebra *a,
                                      size_t cutoff,
                                      uint64_t seed,
                                      enum BocalPdKind *kind,
                                      size_t *value);

// The simple module at vertex index `vertex`.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum BocalStatus bocal_module_simple(const struct BocalAlgebra *a,
                                     size_t vertex,
                                     struct BocalModule **out);

// The indecomposable projective module at vertex index `vertex`.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum BocalStatus bocal_module_projective(const struct BocalAlgebra *a,
                                         size_t vertex,
                                         struct BocalModule **out);

// # Safety
// `m` must come from this library and not be used afterwards.
void bocal_module_free(struct BocalModule *m);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum BocalStatus bocal_module_dim(const struct BocalModule *m, size_t *out);

// Projective dimension, computing at most `cutoff` syzygies.
//
// # Safety
// `m` must be a live handle; `kind` and `value` must be writable.
enum BocalStatus bocal_module_pd(const struct BocalModule *m,
                                 size_t cutoff,
                                 uint64_t seed,
                                 enum BocalPdKind *kind,
                                 size_t *value);

// Runs `report <entry>` and returns the JSON report document. `passed` is set
// to 1 when every verdict passes. Free the string with [`bocal_string_free`].
//
// # Safety
// `entry` must be NUL-terminated; `json` and `passed` must be writable.
enum BocalStatus bocal_report(const char *entry,
                              bool compare,
                              uint64_t seed,
                              char **json,
                              int32_t *passed);

// # Safety
// `s` must come from this library and not be used afterwards.
void bocal_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOCAL_H */
