#ifndef SEGRE_H
#define SEGRE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stdint.h>
#include <stddef.h>

// Status codes; the nonzero values match the `segre` CLI exit codes.
typedef enum SegreStatus {
  SEGRE_STATUS_OK = 0,
  SEGRE_STATUS_NULL_POINTER = 1,
  SEGRE_STATUS_MALFORMED = 2,
  SEGRE_STATUS_HYPOTHESIS = 3,
  SEGRE_STATUS_VERIFICATION = 4,
  SEGRE_STATUS_PANIC = 5,
} SegreStatus;

// Opaque handle to a canonical series `h(t) / (1-t)^d`.
typedef struct SegreSeries SegreSeries;

// Message describing the last failure on this thread, or NULL. The pointer
// stays valid until the next library call on the same thread.
const char *segre_last_error(void);

// Builds `sum_k (num[k]/den[k]) t^exp[k] / (1-t)^pole_order` in canonical
// form. `denominators` may be NULL for integer coefficients. Repeated
// exponents are summed.
enum SegreStatus segre_series_new(const int64_t *exponents,
                                  const int64_t *numerators,
                                  const int64_t *denominators,
                                  uintptr_t len,
                                  uint32_t pole_order,
                                  struct SegreSeries **out);

// Parses a series file (JSON, `{"numerator": [[e, "p/q"], ...], "pole_order": d}`).
enum SegreStatus segre_series_from_json(const char *json, struct SegreSeries **out);

void segre_series_free(struct SegreSeries *series);

void segre_string_free(char *s);

// Text form, e.g. `(3*t^2 - 2*t^3) / (1-t)^2`.
enum SegreStatus segre_series_to_string(const struct SegreSeries *series, char **out);

// Series-file JSON of the canonical form.
enum SegreStatus segre_series_to_json(const struct SegreSeries *series, char **out);

enum SegreStatus segre_series_pole_order(const struct SegreSeries *series, uint32_t *out);

// Degree of the canonical numerator; `SEGRE_STATUS_MALFORMED` for zero.
enum SegreStatus segre_series_degree(const struct SegreSeries *series, int64_t *out);

// Coefficient of `t^k` as a `"p"` or `"p/q"` string.
enum SegreStatus segre_series_coefficient(const struct SegreSeries *series, int64_t k, char **out);

enum SegreStatus segre_series_postulation_number(const struct SegreSeries *series, int64_t *out);

// Segre transform from the numerators. With `verify` the result is
// compared against the brute-force expansion and
// `SEGRE_STATUS_VERIFICATION` is returned on a mismatch.
enum SegreStatus segre_product(const struct SegreSeries *a,
                               const struct SegreSeries *b,
                               bool verify,
                               struct SegreSeries **out);

// Segre transform by coefficientwise expansion.
enum SegreStatus segre_product_oracle(const struct SegreSeries *a,
                                      const struct SegreSeries *b,
                                      struct SegreSeries **out);

enum SegreStatus segre_veronese(const struct SegreSeries *series,
                                uint32_t n,
                                struct SegreSeries **out);

// Regularity of the Segre product of Cohen-Macaulay modules given by their
// Hilbert series (each declared Cohen-Macaulay, dimension = pole order).
// Families containing a zero-dimensional module use the minimum of the
// zero-dimensional regularities.
enum SegreStatus segre_regularity(const struct SegreSeries *const *series,
                                  uintptr_t len,
                                  bool verify,
                                  int64_t *out);

// Simon Newcomb number `A([b], k)` as a decimal string.
enum SegreStatus segre_newcomb(const uint32_t *b, uintptr_t len, int64_t k, char **out);

#endif  /* SEGRE_H */
