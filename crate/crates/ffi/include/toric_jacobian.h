#ifndef TORIC_JACOBIAN_H
#define TORIC_JACOBIAN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TjStatus {
  TJ_STATUS_OK = 0,
  TJ_STATUS_NULL_POINTER = 1,
  TJ_STATUS_INVALID_UTF8 = 2,
  TJ_STATUS_INVALID_INPUT = 3,
  TJ_STATUS_INTERNAL = 4,
  TJ_STATUS_PANIC = 5,
} TjStatus;

// Opaque fan handle.
typedef struct TjFan TjFan;

// Opaque handle on a polynomial together with its Jacobian data.
typedef struct TjSystem TjSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the
// next call into the library from the same thread.
const char *tj_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void tj_string_free(char *s);

// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum TjStatus tj_fan_hirzebruch(uint32_t r, struct TjFan **out);

// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum TjStatus tj_fan_projective_plane(struct TjFan **out);

// Builds a fan from `{"rays": [[a,b],...], "labels": [...]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum TjStatus tj_fan_from_json(const char *json, struct TjFan **out);

// # Safety
// `fan` must be NULL or a handle from this library that has not been freed.
void tj_fan_free(struct TjFan *fan);

// # Safety
// `fan` must be a live handle and `out` writable.
enum TjStatus tj_fan_ray_count(const struct TjFan *fan, size_t *out);

// Number of sections of `sum coeffs[i] D_i`.
//
// # Safety
// `coeffs` must point to `len` integers; `fan` live; `out` writable.
enum TjStatus tj_h0(const struct TjFan *fan, const int64_t *coeffs, size_t len, uint64_t *out);

// Arithmetic genus of a curve in `|sum coeffs[i] D_i|`.
//
// # Safety
// As for [`tj_h0`].
enum TjStatus tj_genus(const struct TjFan *fan, const int64_t *coeffs, size_t len, int64_t *out);

// Parses a homogeneous polynomial written in the fan's variable labels.
//
// # Safety
// `fan` live, `poly` NUL-terminated, `out` writable.
enum TjStatus tj_system_new(const struct TjFan *fan, const char *poly, struct TjSystem **out);

// # Safety
// `sys` must be NULL or a live handle.
void tj_system_free(struct TjSystem *sys);

// `dim R1(f)` in the class `a beta + b K`.
//
// # Safety
// `sys` live, `out` writable.
enum TjStatus tj_system_r1_dim(const struct TjSystem *sys, int64_t a, int64_t b, uint64_t *out);

// `dim J1(f)` in the class with Picard coordinates `coords[0..len]`.
//
// # Safety
// `sys` live, `coords` points to `len` integers, `out` writable.
enum TjStatus tj_system_j1_dim(const struct TjSystem *sys,
                               const int64_t *coords,
                               size_t len,
                               uint64_t *out);

// Writes 1 if the Euler terms have no common zero on the surface, else 0.
//
// # Safety
// `sys` live, `out` writable.
enum TjStatus tj_system_is_nondegenerate(const struct TjSystem *sys, int32_t *out);

// Criterion report as JSON; `quick != 0` selects the `K^2 + 1` variant.
// Free the result with [`tj_string_free`].
//
// # Safety
// `sys` live, `out` writable.
enum TjStatus tj_system_criterion_json(const struct TjSystem *sys, int32_t quick, char **out);

// `dim R1(f_d)_beta` and the criterion on the first Hirzebruch surface for
// `d` in `from..=to`, as a JSON array. Free with [`tj_string_free`].
//
// # Safety
// `out` writable.
enum TjStatus tj_paper_table_json(uint32_t from, uint32_t to, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIC_JACOBIAN_H */
