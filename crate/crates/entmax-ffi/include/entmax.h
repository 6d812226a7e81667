/* C interface to the entmax entropy-maximization library. */

#ifndef ENTMAX_H
#define ENTMAX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every entry point.
typedef enum EntmaxStatus {
  ENTMAX_STATUS_OK = 0,
  // A required pointer argument was null.
  ENTMAX_STATUS_NULL_POINTER = 1,
  // An argument failed validation (shape, range, UTF-8, JSON).
  ENTMAX_STATUS_INVALID_ARGUMENT = 2,
  // The request is outside the mathematical domain of the operation.
  ENTMAX_STATUS_DOMAIN_ERROR = 3,
  // An output buffer is too small; retry with the reported length.
  ENTMAX_STATUS_BUFFER_TOO_SMALL = 4,
  // The implementation panicked; state is unchanged.
  ENTMAX_STATUS_INTERNAL_ERROR = 5,
} EntmaxStatus;

// Opaque handle: an immutable list of independent pmfs on `{0, ..., r}`.
typedef struct EntmaxConfig EntmaxConfig;

// Parity-conditioned entropies of a ternary sum (bits).
typedef struct EntmaxParityReport {
  // Mass on even sums.
  double w;
  double h_even;
  double h_odd;
  double bound_even;
  double bound_odd;
  // 1 when the even class has zero mass.
  uint8_t even_empty;
  // 1 when the odd class has zero mass.
  uint8_t odd_empty;
} EntmaxParityReport;

// Closed-form and numeric maximization summary (entropies in bits).
typedef struct EntmaxMaxSummary {
  double bound_bits;
  double w0;
  double attaining_entropy;
  double numeric_best;
  double gap_bits;
} EntmaxMaxSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the message of the most recent error on this thread into `buf`
// (NUL-terminated, truncated to `len` bytes). Returns the full message
// length in bytes, excluding the terminator. `buf` may be null to query
// the length alone.
//
// # Safety
// `buf`, when non-null, must point to `len` writable bytes.
uintptr_t entmax_last_error(char *buf, uintptr_t len);

// Build a config from a row-major `n x (r + 1)` probability matrix.
//
// # Safety
// `probs` must point to `n * (r + 1)` doubles; `out` must be writable.
enum EntmaxStatus entmax_config_new(uint32_t r,
                                    uint32_t n,
                                    const double *probs,
                                    struct EntmaxConfig **out);

// Build a config from the JSON format `{"r": 2, "pmfs": [[...], ...]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum EntmaxStatus entmax_config_from_json(const char *json, struct EntmaxConfig **out);

// The configuration attaining the closed-form maximum for `(n, r)`.
//
// # Safety
// `out` must be writable.
enum EntmaxStatus entmax_attaining_config(uint32_t n, uint32_t r, struct EntmaxConfig **out);

// Release a config handle. Null is ignored.
//
// # Safety
// `config` must have come from this library and not been freed before.
void entmax_config_free(struct EntmaxConfig *config);

// Number of variables in the config.
//
// # Safety
// `config` must be a live handle; `out` must be writable.
enum EntmaxStatus entmax_config_n(const struct EntmaxConfig *config, uint32_t *out);

// Largest symbol value `r` of the config's alphabet.
//
// # Safety
// `config` must be a live handle; `out` must be writable.
enum EntmaxStatus entmax_config_r(const struct EntmaxConfig *config, uint32_t *out);

// PMF of the sum of the config's variables; `n * r + 1` doubles.
// `written` receives the required length; the copy happens only when
// `buf_len` suffices.
//
// # Safety
// `config` must be a live handle; `buf` must point to `buf_len` doubles;
// `written` must be writable.
enum EntmaxStatus entmax_sum_law(const struct EntmaxConfig *config,
                                 double *buf,
                                 uintptr_t buf_len,
                                 uintptr_t *written);

// Shannon entropy (bits) of the sum of the config's variables.
//
// # Safety
// `config` must be a live handle; `out` must be writable.
enum EntmaxStatus entmax_sum_entropy(const struct EntmaxConfig *config, double *out);

// Parity-conditioned entropy report of a ternary config.
//
// # Safety
// `config` must be a live handle; `out` must be writable.
enum EntmaxStatus entmax_parity_report(const struct EntmaxConfig *config,
                                       struct EntmaxParityReport *out);

// Binary entropy `h(p)` in bits, `p` in `[0, 1]`.
//
// # Safety
// `out` must be writable.
enum EntmaxStatus entmax_binary_entropy(double p, double *out);

// Entropy of the symmetric binomial `Bin(m, 1/2)` in bits.
//
// # Safety
// `out` must be writable.
enum EntmaxStatus entmax_binomial_entropy(uint32_t m, double *out);

// Closed-form maximum of the sum entropy over products of laws on
// `{0, ..., r}`, with its mixing weight.
//
// # Safety
// `w0` and `bound_bits` must be writable.
enum EntmaxStatus entmax_bound(uint32_t n, uint32_t r, double *w0, double *bound_bits);

// Multi-start numeric maximization; deterministic in `(n, r, starts,
// seed)`. `best_config` may be null; when non-null it receives a handle
// to the best configuration found.
//
// # Safety
// `out` must be writable; `best_config`, when non-null, must be writable.
enum EntmaxStatus entmax_optimize(uint32_t n,
                                  uint32_t r,
                                  uint32_t starts,
                                  uint64_t seed,
                                  struct EntmaxMaxSummary *out,
                                  struct EntmaxConfig **best_config);

// Ultra-log-concavity of order `order`, decided exactly (the doubles
// embed exactly into the rationals).
//
// # Safety
// `coeffs` must point to `len` doubles; `out` must be writable.
enum EntmaxStatus entmax_seq_is_ulc(const double *coeffs,
                                    uintptr_t len,
                                    uint64_t order,
                                    uint8_t *out);

// Log-concavity, decided exactly.
//
// # Safety
// `coeffs` must point to `len` doubles; `out` must be writable.
enum EntmaxStatus entmax_seq_is_log_concave(const double *coeffs, uintptr_t len, uint8_t *out);

// Whether all zeros of the polynomial are real (exact Sturm count).
//
// # Safety
// `coeffs` must point to `len` doubles; `out` must be writable.
enum EntmaxStatus entmax_seq_real_rooted(const double *coeffs, uintptr_t len, uint8_t *out);

// Whether all zeros lie in the open left half-plane (exact Routh table).
//
// # Safety
// `coeffs` must point to `len` doubles; `out` must be writable.
enum EntmaxStatus entmax_seq_hurwitz_stable(const double *coeffs, uintptr_t len, uint8_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTMAX_H */
