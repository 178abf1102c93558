#ifndef GALOIS_QUDIT_H
#define GALOIS_QUDIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  GQ_STATUS_OK = 0,
  GQ_STATUS_NULL_POINTER = 1,
  GQ_STATUS_INVALID_ARGUMENT = 2,
  GQ_STATUS_DIMENSION_MISMATCH = 3,
  GQ_STATUS_INVALID_FIELD = 4,
  GQ_STATUS_NOT_COMMUTING = 5,
  GQ_STATUS_DECODE_FAILURE = 6,
  GQ_STATUS_PARSE = 7,
  GQ_STATUS_TOO_LARGE = 8,
  GQ_STATUS_BUFFER_TOO_SMALL = 9,
  GQ_STATUS_INTERNAL = 10,
  GQ_STATUS_PANIC = 11,
} GqStatus;

/**
 * Error type for [`gq_qrs_decode`].
 */
typedef enum {
  GQ_ERROR_KIND_X = 0,
  GQ_ERROR_KIND_Z = 1,
} GqErrorKind;

typedef struct GqField GqField;

typedef struct GqQrs GqQrs;

typedef struct GqTableau GqTableau;

/**
 * Distances are `-1` when enumeration exceeded the budget and `-2` when the
 * code has no logical operators.
 */
typedef struct {
  uint64_t n;
  uint64_t k;
  int64_t d_x;
  int64_t d_z;
  int64_t d;
} GqCodeParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into the library on the same thread.
 */
const char *gq_last_error_message(void);

/**
 * Releases a string returned by the library.
 */
void gq_string_free(char *s);

/**
 * Field with the given irreducible modulus (bitmask, e.g. 11 for x^3+x+1).
 */
GqStatus gq_field_new(uint64_t modulus, GqField **out);

/**
 * Field of order `q` with the canonical modulus.
 */
GqStatus gq_field_with_order(uint64_t q, GqField **out);

void gq_field_free(GqField *f);

/**
 * Order of the field, or 0 for a null handle.
 */
uint64_t gq_field_order(const GqField *f);

/**
 * Degree `s` of the field over F_2, or 0 for a null handle.
 */
uint32_t gq_field_degree(const GqField *f);

GqStatus gq_field_mul(const GqField *f, uint32_t a, uint32_t b, uint32_t *out);

GqStatus gq_field_inv(const GqField *f, uint32_t a, uint32_t *out);

GqStatus gq_field_trace(const GqField *f, uint32_t a, uint32_t *out);

/**
 * Writes the `s` elements of a self-dual basis into `out` (capacity `cap`).
 */
GqStatus gq_self_dual_basis(const GqField *f, uint32_t *out, size_t cap);

/**
 * QRS code with the first `n` field elements as evaluation points and unit
 * multipliers.
 */
GqStatus gq_qrs_new(const GqField *f, size_t n, size_t k1, size_t k2, GqQrs **out);

void gq_qrs_free(GqQrs *c);

/**
 * Brute-force parameters; `budget` caps the codewords enumerated per distance.
 */
GqStatus gq_qrs_params(const GqQrs *c, uint64_t budget, GqCodeParams *out);

/**
 * Code JSON (`q`, `modulus`, `n`, `gx`, `gz`, `qrs`).
 */
GqStatus gq_qrs_to_json(const GqQrs *c, char **out);

/**
 * Qubit conversion bundle (`qudit_code`, `basis_assignment`, `hx`, `hz`) with
 * the self-dual basis on every qudit.
 */
GqStatus gq_qrs_to_qubits_json(const GqQrs *c, char **out);

/**
 * Decodes a qubit error of length `n·s` through the qubit syndrome; writes
 * the estimate into `out` (same length).
 */
GqStatus gq_qrs_decode(const GqQrs *c,
                       GqErrorKind kind,
                       const uint8_t *error,
                       size_t len,
                       uint8_t *out);

/**
 * Tableau from JSON (`q`, `modulus`, `xrows`, `zrows`, `xsyn`, `zsyn`).
 */
GqStatus gq_tableau_from_json(const char *json, GqTableau **out);

GqStatus gq_tableau_to_json(const GqTableau *t, char **out);

void gq_tableau_free(GqTableau *t);

/**
 * Measures the pure Pauli `X^w` (or `Z^w` when `z_type`) and updates the
 * tableau in place. Random outcomes are drawn from a generator seeded with
 * `seed`.
 */
GqStatus gq_tableau_measure(GqTableau *t,
                            bool z_type,
                            const uint32_t *w,
                            size_t len,
                            uint64_t seed,
                            uint32_t *outcome,
                            bool *deterministic);

/**
 * Hierarchy level of a named gate (`x`, `z`, `hadamard`, `mult`, `cnot`,
 * `ccz`, `multi_cz`, `u_n`, `s`, `t`). `param` is β, γ or δ; `count` is the
 * qudit count for `multi_cz` or the exponent for `u_n` (ignored otherwise).
 * Writes `-1` when the level exceeds `max_level`.
 */
GqStatus gq_hierarchy_level(const GqField *f,
                            const char *gate,
                            uint32_t param,
                            uint32_t count,
                            uint32_t max_level,
                            int32_t *out);

/**
 * Runs the acceptance suite; `report` (optional) receives the JSON report.
 */
GqStatus gq_verify_all(uint64_t seed, bool *passed, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GALOIS_QUDIT_H */
