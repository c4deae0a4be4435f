#ifndef SCHUBERT_H
#define SCHUBERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum SchubertStatus {
  SCHUBERT_STATUS_OK = 0,
  SCHUBERT_STATUS_NULL_POINTER = 1,
  SCHUBERT_STATUS_INVALID_ARGUMENT = 2,
  SCHUBERT_STATUS_INVALID_GROUP = 3,
  SCHUBERT_STATUS_NOT_CARTAN = 4,
  SCHUBERT_STATUS_RESOURCE_LIMIT = 5,
  SCHUBERT_STATUS_NOT_FOUND = 6,
  SCHUBERT_STATUS_TRUNCATED_TABLE = 7,
  SCHUBERT_STATUS_DEGREE_MISMATCH = 8,
  SCHUBERT_STATUS_BUFFER_TOO_SMALL = 9,
  SCHUBERT_STATUS_FAILED = 10,
  SCHUBERT_STATUS_PANIC = 11,
} SchubertStatus;

// Opaque coset table.
typedef struct SchubertTable SchubertTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds the table of a builtin group, `series` one of `ABCDEFG`.
// `max_len < 0` means no bound; `max_cosets == 0` uses the default limit.
//
// # Safety
// `k` must point to `k_len` values and `out` must be writable.
enum SchubertStatus schubert_table_new_builtin(char series,
                                               uintptr_t rank,
                                               const uintptr_t *k,
                                               uintptr_t k_len,
                                               int64_t max_len,
                                               uintptr_t max_cosets,
                                               struct SchubertTable **out);

// Builds the table of a Cartan matrix given row-major as `rank * rank`
// entries.
//
// # Safety
// `entries` must point to `rank * rank` values, `k` to `k_len` values and
// `out` must be writable.
enum SchubertStatus schubert_table_new_cartan(const int64_t *entries,
                                              uintptr_t rank,
                                              const uintptr_t *k,
                                              uintptr_t k_len,
                                              int64_t max_len,
                                              uintptr_t max_cosets,
                                              struct SchubertTable **out);

// Releases a table; null is ignored.
//
// # Safety
// `t` must come from a `schubert_table_new_*` call and not be used after.
void schubert_table_free(struct SchubertTable *t);

// Number of cosets, 0 for null.
//
// # Safety
// `t` must be null or a live table.
uintptr_t schubert_table_len(const struct SchubertTable *t);

// Largest length present.
//
// # Safety
// `t` must be null or a live table.
uintptr_t schubert_table_top_length(const struct SchubertTable *t);

// 1 when the table was not cut off by a length bound.
//
// # Safety
// `t` must be null or a live table.
int32_t schubert_table_is_complete(const struct SchubertTable *t);

// Number of classes of length `m`.
//
// # Safety
// `t` must be null or a live table.
uintptr_t schubert_table_betti(const struct SchubertTable *t, uintptr_t m);

// Copies the minimized word of `w_{m,i}` into `buf`. `out_len` receives
// the word length, also when the buffer is too small.
//
// # Safety
// `buf` must hold `cap` bytes; `out_len` must be writable.
enum SchubertStatus schubert_table_word(const struct SchubertTable *t,
                                        uintptr_t m,
                                        uintptr_t i,
                                        uint8_t *buf,
                                        uintptr_t cap,
                                        uintptr_t *out_len);

// Index `(m, i)` of the coset containing the element of `word`.
//
// # Safety
// `word` must hold `len` bytes; `out_m` and `out_i` must be writable.
enum SchubertStatus schubert_table_lookup(const struct SchubertTable *t,
                                          const uint8_t *word,
                                          uintptr_t len,
                                          uintptr_t *out_m,
                                          uintptr_t *out_i);

// Writes the structure matrix of `w_{m,i}` row-major into `buf`
// (`l * l` entries, `l = m`).
//
// # Safety
// `buf` must hold `cap` values.
enum SchubertStatus schubert_structure_matrix(const struct SchubertTable *t,
                                              uintptr_t m,
                                              uintptr_t i,
                                              int64_t *buf,
                                              uintptr_t cap);

// `c^w_{u_1..u_k}` with `w = w_{w_m,w_i}` and `classes` holding `k`
// consecutive `(m, i)` pairs. The decimal result is returned in `out` and
// must be released with `schubert_string_free`.
//
// # Safety
// `classes` must hold `2 * n_classes` values; `out` must be writable.
enum SchubertStatus schubert_characteristic(const struct SchubertTable *t,
                                            uintptr_t w_m,
                                            uintptr_t w_i,
                                            const uintptr_t *classes,
                                            uintptr_t n_classes,
                                            char **out);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must come from this library and not be used after.
void schubert_string_free(char *s);

// Message of the last failure on this thread, or null. Valid until the
// next call into the library on the same thread.
const char *schubert_last_error_message(void);

// Library version as a static string.
const char *schubert_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHUBERT_H */
