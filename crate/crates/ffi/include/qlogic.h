#ifndef QLOGIC_H
#define QLOGIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum QlogicStatus {
  QLOGIC_STATUS_OK = 0,
  // A required pointer argument was null.
  QLOGIC_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  QLOGIC_STATUS_INVALID_UTF8 = 2,
  // Text input (lattice file, scenario file, query) did not parse or
  // was inconsistent.
  QLOGIC_STATUS_PARSE_ERROR = 3,
  // Input parsed but failed numeric validation.
  QLOGIC_STATUS_NUMERIC_ERROR = 4,
  // A label, name or index does not exist.
  QLOGIC_STATUS_NOT_FOUND = 5,
  // The operation needs an orthocomplement the lattice lacks.
  QLOGIC_STATUS_NO_ORTHOCOMPLEMENT = 6,
  // A Rust panic was caught at the boundary.
  QLOGIC_STATUS_PANIC = 7,
} QlogicStatus;

// Lattice laws that can be checked.
typedef enum QlogicLaw {
  QLOGIC_LAW_ORTHOCOMPLEMENTED = 0,
  QLOGIC_LAW_DISTRIBUTIVE = 1,
  QLOGIC_LAW_MODULAR = 2,
  QLOGIC_LAW_ORTHOMODULAR = 3,
  QLOGIC_LAW_BOOLEAN = 4,
  QLOGIC_LAW_ATOMISTIC = 5,
  QLOGIC_LAW_COVERING = 6,
} QlogicLaw;

// Opaque finite lattice.
typedef struct QlogicLattice QlogicLattice;

// Opaque scenario: question families plus a prior state.
typedef struct QlogicScenario QlogicScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failed call on this thread, or an empty
// string after a successful call. The pointer stays valid until the next
// call into this library on the same thread.
const char *qlogic_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` is null or a string returned by this library and not yet freed.
void qlogic_string_free(char *s);

// Parses a lattice file (`elements:`, `covers:`, `ortho:` lines).
//
// # Safety
// `text` is a NUL-terminated string; `out` is writable.
enum QlogicStatus qlogic_lattice_parse(const char *text, struct QlogicLattice **out);

// Builds a built-in lattice: `egg1`, `egg2`, `sg1`, `sg2` or `o6`.
//
// # Safety
// `name` is a NUL-terminated string; `out` is writable.
enum QlogicStatus qlogic_lattice_catalog(const char *name, struct QlogicLattice **out);

// Releases a lattice. Null is ignored.
//
// # Safety
// `l` is null or a handle from this library not yet freed.
void qlogic_lattice_free(struct QlogicLattice *l);

// Number of elements.
//
// # Safety
// `l` is a live handle; `out` is writable.
enum QlogicStatus qlogic_lattice_len(const struct QlogicLattice *l, size_t *out);

// Index of the element labelled `label`.
//
// # Safety
// `l` is a live handle; `label` is a NUL-terminated string; `out` is
// writable.
enum QlogicStatus qlogic_lattice_find(const struct QlogicLattice *l,
                                      const char *label,
                                      size_t *out);

// Label of the element at `index`, as a new string.
//
// # Safety
// `l` is a live handle; `out` is writable.
enum QlogicStatus qlogic_lattice_label(const struct QlogicLattice *l, size_t index, char **out);

// Index of the meet of elements `a` and `b`.
//
// # Safety
// `l` is a live handle; `out` is writable.
enum QlogicStatus qlogic_lattice_meet(const struct QlogicLattice *l,
                                      size_t a,
                                      size_t b,
                                      size_t *out);

// Index of the join of elements `a` and `b`.
//
// # Safety
// `l` is a live handle; `out` is writable.
enum QlogicStatus qlogic_lattice_join(const struct QlogicLattice *l,
                                      size_t a,
                                      size_t b,
                                      size_t *out);

// Index of the orthocomplement of element `a`.
//
// # Safety
// `l` is a live handle; `out` is writable.
enum QlogicStatus qlogic_lattice_complement(const struct QlogicLattice *l, size_t a, size_t *out);

// Whether `law` holds, decided by exhaustive search.
//
// # Safety
// `l` is a live handle; `out` is writable.
enum QlogicStatus qlogic_lattice_check(const struct QlogicLattice *l,
                                       enum QlogicLaw law,
                                       bool *out);

// Report of every law, one line each; `key=value` lines if `kv`.
//
// # Safety
// `l` is a live handle; `out` is writable.
enum QlogicStatus qlogic_lattice_report(const struct QlogicLattice *l, bool kv, char **out);

// Hasse diagram in Graphviz DOT, as a graph called `name`.
//
// # Safety
// `l` is a live handle; `name` is a NUL-terminated string; `out` is
// writable.
enum QlogicStatus qlogic_lattice_dot(const struct QlogicLattice *l, const char *name, char **out);

// Parses a scenario file at the default tolerance.
//
// # Safety
// `text` is a NUL-terminated string; `out` is writable.
enum QlogicStatus qlogic_scenario_parse(const char *text, struct QlogicScenario **out);

// Probability of `query` under the scenario's prior.
//
// # Safety
// `s` is a live handle; `query` is a NUL-terminated string; `out` is
// writable.
enum QlogicStatus qlogic_scenario_eval(const struct QlogicScenario *s,
                                       const char *query,
                                       double *out);

// Releases a scenario. Null is ignored.
//
// # Safety
// `s` is null or a handle from this library not yet freed.
void qlogic_scenario_free(struct QlogicScenario *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLOGIC_H */
