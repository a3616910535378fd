#ifndef VACILLATING_H
#define VACILLATING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum VacStatus {
  VAC_STATUS_OK = 0,
  VAC_STATUS_NULL_POINTER = 1,
  VAC_STATUS_PARSE_ERROR = 2,
  VAC_STATUS_INVALID_INPUT = 3,
  VAC_STATUS_LIMIT_EXCEEDED = 4,
  VAC_STATUS_VERIFICATION_FAILED = 5,
  VAC_STATUS_BUFFER_TOO_SMALL = 6,
  VAC_STATUS_INTERNAL = 7,
} VacStatus;

/**
 * A set partition diagram.
 */
typedef struct VacDiagram VacDiagram;

/**
 * A vacillating tableau in either coordinate form.
 */
typedef struct VacPath VacPath;

/**
 * A standard tableau.
 */
typedef struct VacTableau VacTableau;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *vac_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library.
 */
void vac_string_free(char *s);

/**
 * Parses diagram text such as `1 3 4' | 2 1' | 4 3' 2'`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum VacStatus vac_diagram_parse(const char *text, struct VacDiagram **out);

/**
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum VacStatus vac_diagram_to_string(const struct VacDiagram *d, char **out);

/**
 * Size `k` of the diagram; 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
uintptr_t vac_diagram_k(const struct VacDiagram *d);

/**
 * # Safety
 * `d` must be null or a handle not yet freed.
 */
void vac_diagram_free(struct VacDiagram *d);

/**
 * Parses a vacillating tableau: `-;-;1` or `(6);(5);(5,1)`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum VacStatus vac_path_parse(const char *text, struct VacPath **out);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum VacStatus vac_path_to_string(const struct VacPath *p, char **out);

/**
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void vac_path_free(struct VacPath *p);

/**
 * Parses a standard tableau such as `1,2,3,6/4/5`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum VacStatus vac_tableau_parse(const char *text, struct VacTableau **out);

/**
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum VacStatus vac_tableau_to_string(const struct VacTableau *t, char **out);

/**
 * # Safety
 * `t` must be null or a handle not yet freed.
 */
void vac_tableau_free(struct VacTableau *t);

/**
 * Inserts a diagram, producing the pair `(P, Q)`.
 *
 * # Safety
 * `d` must be a live handle; `out_p` and `out_q` valid pointers.
 */
enum VacStatus vac_insert_diagram(const struct VacDiagram *d,
                                  struct VacPath **out_p,
                                  struct VacPath **out_q);

/**
 * Recovers the diagram with insertion output `(P, Q)`.
 *
 * # Safety
 * `p` and `q` must be live handles and `out` a valid pointer.
 */
enum VacStatus vac_invert_paths(const struct VacPath *p,
                                const struct VacPath *q,
                                struct VacDiagram **out);

/**
 * Delete-insert of `seq[0..len]` with parameter `n`.
 *
 * # Safety
 * `seq` must point to `len` readable values; `out_t` and `out_p` must be
 * valid pointers.
 */
enum VacStatus vac_di_insert(const uint32_t *seq,
                             uintptr_t len,
                             uint32_t n,
                             struct VacTableau **out_t,
                             struct VacPath **out_p);

/**
 * Inverse of [`vac_di_insert`]. Writes up to `capacity` values to `out`
 * and the sequence length to `out_len`; returns
 * [`VacStatus::BufferTooSmall`] when `capacity` is short.
 *
 * # Safety
 * `t` and `p` must be live handles, `out` must have room for `capacity`
 * values and `out_len` must be a valid pointer.
 */
enum VacStatus vac_di_invert(const struct VacTableau *t,
                             const struct VacPath *p,
                             uint32_t *out,
                             uintptr_t capacity,
                             uintptr_t *out_len);

/**
 * Runs an exhaustive identity check and writes its JSON report to
 * `out_json`.
 *
 * `identity` is one of `bell`, `odd-bell`, `nk`, `ideal`, `catalan`,
 * `binomial`, `symmetric:<family>` or `squares:<family>`. `k2` is twice
 * `k`. `extra` is `n` for `nk` and `t` for `ideal`; pass a negative value
 * for the default (`n = 2k`, every `t`). `workers` of 0 uses the global
 * pool. Returns [`VacStatus::VerificationFailed`] (with the report still
 * written) when the identity does not hold.
 *
 * # Safety
 * `identity` must be a nul-terminated string and `out_json` a valid
 * pointer.
 */
enum VacStatus vac_verify(const char *identity,
                          uintptr_t k2,
                          int64_t extra,
                          uintptr_t workers,
                          char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VACILLATING_H */
