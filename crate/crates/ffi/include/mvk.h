#ifndef MVK_H
#define MVK_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Binary operation selector for [`mvk_element_op`].
typedef enum MvkOp {
  MVK_OP_OPLUS = 0,
  MVK_OP_ODOT = 1,
  MVK_OP_JOIN = 2,
  MVK_OP_MEET = 3,
  MVK_OP_DISTANCE = 4,
} MvkOp;

// Result of a call.
typedef enum MvkStatus {
  MVK_STATUS_OK = 0,
  MVK_STATUS_NULL_POINTER = 1,
  MVK_STATUS_INVALID_ARGUMENT = 2,
  MVK_STATUS_PARSE_ERROR = 3,
  MVK_STATUS_ALGEBRA_MISMATCH = 4,
  MVK_STATUS_COUNTEREXAMPLE = 5,
  MVK_STATUS_INTERNAL = 6,
} MvkStatus;

// A finite product of Łukasiewicz chains.
typedef struct MvkAlgebra MvkAlgebra;

// An element of an [`MvkAlgebra`].
typedef struct MvkElement MvkElement;

// A piecewise-linear function on `[0, 1]` with rational breakpoints.
typedef struct MvkPl MvkPl;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *mvk_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void mvk_string_free(char *s);

// `Ł_{d_0} × … × Ł_{d_{len-1}}`.
//
// # Safety
// `denominators` must point to `len` readable values.
enum MvkStatus mvk_algebra_new(const uint32_t *denominators, size_t len, struct MvkAlgebra **out);

// # Safety
// `a` must come from [`mvk_algebra_new`] and not be freed twice.
void mvk_algebra_free(struct MvkAlgebra *a);

// Number of factors, or 0 for null.
//
// # Safety
// `a` must be null or a live handle.
size_t mvk_algebra_rank(const struct MvkAlgebra *a);

// Number of elements (saturating), or 0 for null.
//
// # Safety
// `a` must be null or a live handle.
uint64_t mvk_algebra_carrier(const struct MvkAlgebra *a);

// The element with coordinate values `numerators[i] / d_i`.
//
// # Safety
// `a` must be a live handle and `numerators` must point to `len` values.
enum MvkStatus mvk_element_new(const struct MvkAlgebra *a,
                               const uint32_t *numerators,
                               size_t len,
                               struct MvkElement **out);

// Reads an element document such as `{"kind":"element","values":["1/2"]}`.
//
// # Safety
// `json` must be a nul-terminated string.
enum MvkStatus mvk_element_parse(const char *json, struct MvkElement **out);

// # Safety
// `e` must come from this library and not be freed twice.
void mvk_element_free(struct MvkElement *e);

// Copies up to `cap` numerators into `buf` and stores the rank in `len`.
//
// # Safety
// `buf` must have room for `cap` values; `len` must be writable.
enum MvkStatus mvk_element_numerators(const struct MvkElement *e,
                                      uint32_t *buf,
                                      size_t cap,
                                      size_t *len);

// Element document with explicit denominators.
//
// # Safety
// `e` must be a live handle; `out` receives a string for [`mvk_string_free`].
enum MvkStatus mvk_element_to_json(const struct MvkElement *e, char **out);

// `a op b` for elements of one algebra.
//
// # Safety
// `a`, `b` must be live handles.
enum MvkStatus mvk_element_op(enum MvkOp op,
                              const struct MvkElement *a,
                              const struct MvkElement *b,
                              struct MvkElement **out);

// `¬a`.
//
// # Safety
// `a` must be a live handle.
enum MvkStatus mvk_element_neg(const struct MvkElement *a, struct MvkElement **out);

// Whether `x ⊑ y`.
//
// # Safety
// `x`, `y` must be live handles and `out` writable.
enum MvkStatus mvk_element_below(const struct MvkElement *x, const struct MvkElement *y, bool *out);

// Whether `a ⊕ a = a`; false for null.
//
// # Safety
// `a` must be null or a live handle.
bool mvk_element_is_boolean(const struct MvkElement *a);

// One application of the game map.
//
// # Safety
// `a` must be a live handle.
enum MvkStatus mvk_game_step(const struct MvkElement *a, struct MvkElement **out);

// The fixpoint of the game map from `a` and the number of steps to reach it.
//
// # Safety
// `a` must be a live handle; `steps` may be null.
enum MvkStatus mvk_game_fixpoint(const struct MvkElement *a,
                                 struct MvkElement **out,
                                 size_t *steps);

// The central elements below `a` as a JSON array of element documents.
//
// # Safety
// `a` must be a live handle; `out` receives a string for [`mvk_string_free`].
enum MvkStatus mvk_central_cone_json(const struct MvkElement *a, char **out);

// The one-variable function of the σ term.
//
// # Safety
// `out` must be writable.
enum MvkStatus mvk_pl_sigma(struct MvkPl **out);

// Reads a `pl1` document.
//
// # Safety
// `json` must be a nul-terminated string.
enum MvkStatus mvk_pl_parse(const char *json, struct MvkPl **out);

// # Safety
// `f` must come from this library and not be freed twice.
void mvk_pl_free(struct MvkPl *f);

// `f(num/den)` as a reduced fraction.
//
// # Safety
// `f` must be a live handle; `out_num`, `out_den` writable.
enum MvkStatus mvk_pl_eval(const struct MvkPl *f,
                           int64_t num,
                           int64_t den,
                           int64_t *out_num,
                           int64_t *out_den);

// Runs a verification suite (or `"all"`) with default bounds, or with every
// element-level sweep capped at `max_carrier` when it is nonzero. Returns
// [`MvkStatus::Counterexample`] when a suite fails; the text report is
// stored in `report` either way.
//
// # Safety
// `suite` must be a nul-terminated string; `report` may be null.
enum MvkStatus mvk_verify(const char *suite, uint64_t max_carrier, char **report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MVK_H */
