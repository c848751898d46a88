#ifndef PARTALG_H
#define PARTALG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum PaStatus {
  PA_STATUS_OK = 0,
  PA_STATUS_NULL_POINTER = 1,
  PA_STATUS_INVALID_UTF8 = 2,
  PA_STATUS_PARSE = 3,
  PA_STATUS_DOMAIN = 4,
  PA_STATUS_LIMIT_EXCEEDED = 5,
  PA_STATUS_DIVISION_BY_ZERO = 6,
  PA_STATUS_PANIC = 7,
} PaStatus;

// A partition diagram.
typedef struct PaDiagram PaDiagram;

// An algebra element at a rational parameter.
typedef struct PaElement PaElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Owned by the
// library and valid until the next failing call on the same thread.
const char *pa_last_error(void);

// Frees a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void pa_string_free(char *s);

// Number of diagrams at double rank `double_rank` (at most 8).
//
// # Safety
// `out` must be valid for writes.
enum PaStatus pa_count_diagrams(uint32_t double_rank, uint64_t *out);

// Parses `{"double_rank": 4, "blocks": [[1, -1], [2], [-2]]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` valid for writes.
enum PaStatus pa_diagram_from_json(const char *json, struct PaDiagram **out);

// # Safety
// `d` must come from this library and not be freed twice.
void pa_diagram_free(struct PaDiagram *d);

// # Safety
// `d` must be a live handle and `out` valid for writes.
enum PaStatus pa_diagram_to_json(const struct PaDiagram *d, char **out);

// Concatenation `a` over `b`; `loops` receives the number of closed
// components removed.
//
// # Safety
// `a`, `b` must be live handles; `out` and `loops` valid for writes.
enum PaStatus pa_diagram_compose(const struct PaDiagram *a,
                                 const struct PaDiagram *b,
                                 struct PaDiagram **out,
                                 uintptr_t *loops);

// # Safety
// `d` must be a live handle and `out` valid for writes.
enum PaStatus pa_diagram_propagating_number(const struct PaDiagram *d, uintptr_t *out);

// The diagram as an element at parameter `num / den`.
//
// # Safety
// `d` must be a live handle and `out` valid for writes.
enum PaStatus pa_element_from_diagram(const struct PaDiagram *d,
                                      int64_t num,
                                      int64_t den,
                                      struct PaElement **out);

// # Safety
// `e` must come from this library and not be freed twice.
void pa_element_free(struct PaElement *e);

// # Safety
// `a`, `b` must be live handles and `out` valid for writes.
enum PaStatus pa_element_add(const struct PaElement *a,
                             const struct PaElement *b,
                             struct PaElement **out);

// # Safety
// `a`, `b` must be live handles and `out` valid for writes.
enum PaStatus pa_element_mul(const struct PaElement *a,
                             const struct PaElement *b,
                             struct PaElement **out);

// Markov trace as a decimal fraction string such as `"49"` or `"7/2"`.
//
// # Safety
// `e` must be a live handle and `out` valid for writes.
enum PaStatus pa_element_trace(const struct PaElement *e, char **out);

// # Safety
// `e` must be a live handle and `out` valid for writes.
enum PaStatus pa_element_is_zero(const struct PaElement *e, int *out);

// # Safety
// `e` must be a live handle and `out` valid for writes.
enum PaStatus pa_element_to_json(const struct PaElement *e, char **out);

// Coefficients (constant term first) of the character polynomial of `mu`,
// written `"2,1"`, as a JSON array of fraction strings.
//
// # Safety
// `mu` must be a NUL-terminated string and `out` valid for writes.
enum PaStatus pa_char_poly(const char *mu, int half, char **out);

// Semisimplicity at double rank `double_rank` and integer `n >= 2`:
// by the rank bound, and by the regular-trace Gram determinant (`-1` above
// the Gram cap).
//
// # Safety
// `by_theorem` and `by_gram` must be valid for writes.
enum PaStatus pa_semisimple(uint32_t double_rank, uint32_t n, int *by_theorem, int *by_gram);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARTALG_H */
