#ifndef ABSUM_H
#define ABSUM_H

/* Generated by cbindgen from absum-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum AbsumStatus {
  ABSUM_STATUS_OK = 0,
  // A required pointer was NULL.
  ABSUM_STATUS_NULL_POINTER = 1,
  // A range, modulus, truncation cutoff or buffer length was rejected.
  ABSUM_STATUS_INVALID_ARGUMENT = 2,
  // A value or sum does not fit its integer type.
  ABSUM_STATUS_OVERFLOW = 3,
  // The configured lookahead margin is below A(x); raise it and retry.
  ABSUM_STATUS_MARGIN_EXCEEDED = 4,
  // Unexpected internal failure.
  ABSUM_STATUS_INTERNAL = 5,
} AbsumStatus;

// Opaque handle bundling sieve tuning and series truncation settings.
typedef struct AbsumConfig AbsumConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Allocates a config with default settings. Free with `absum_config_free`.
struct AbsumConfig *absum_config_new(void);

// Frees a config. NULL is accepted and ignored.
//
// # Safety
//
// `cfg` must be NULL or a pointer returned by `absum_config_new` that has
// not been freed yet.
void absum_config_free(struct AbsumConfig *cfg);

// Sets the worker thread count (0 is rejected). Results never depend on
// this setting.
//
// # Safety
//
// `cfg` must be a live pointer from `absum_config_new`.
enum AbsumStatus absum_config_set_threads(struct AbsumConfig *cfg, size_t threads);

// Sets the sieve segment length in elements (minimum 65536). Results never
// depend on this setting.
//
// # Safety
//
// `cfg` must be a live pointer from `absum_config_new`.
enum AbsumStatus absum_config_set_segment_len(struct AbsumConfig *cfg, size_t len);

// Sets the lookahead margin for the shifted sums and disables the
// automatic retry; the margin must be at least A(x) or the computation
// reports `MarginExceeded`.
//
// # Safety
//
// `cfg` must be a live pointer from `absum_config_new`.
enum AbsumStatus absum_config_set_margin(struct AbsumConfig *cfg, uint64_t margin);

// Sets the Euler product truncation bounds used by the constants. Any
// argument of 0 keeps the current value.
//
// # Safety
//
// `cfg` must be a live pointer from `absum_config_new`.
enum AbsumStatus absum_config_set_cutoffs(struct AbsumConfig *cfg,
                                          uint64_t prime_cutoff,
                                          uint64_t squarefull_cutoff,
                                          uint64_t d_cutoff);

// Q(x), the sum of a(n + a(n)) over n <= x (x >= 1).
//
// # Safety
//
// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
// be valid for one u64 write.
enum AbsumStatus absum_qsum(const struct AbsumConfig *cfg, uint64_t x, uint64_t *out);

// T(x; k, r), the sum of a(m) over m <= x with m congruent to k mod r
// (r >= 1, x >= 1; k is reduced mod r).
//
// # Safety
//
// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
// be valid for one u64 write.
enum AbsumStatus absum_tsum(const struct AbsumConfig *cfg,
                            uint64_t x,
                            uint64_t k,
                            uint64_t r,
                            uint64_t *out);

// The sum of d_k(n + a(n)) over n <= x, for k in {2, 3, 4}.
//
// # Safety
//
// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
// be valid for one u64 write.
enum AbsumStatus absum_dkshift(const struct AbsumConfig *cfg,
                               uint64_t x,
                               uint32_t k,
                               uint64_t *out);

// A(x), the maximum of a(n) over n <= x (x >= 1).
//
// # Safety
//
// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
// be valid for one u64 write.
enum AbsumStatus absum_maxa(const struct AbsumConfig *cfg, uint64_t x, uint64_t *out);

// The number of squarefull integers not exceeding u.
//
// # Safety
//
// `out` must be valid for one u64 write.
enum AbsumStatus absum_squarefull_count(uint64_t u, uint64_t *out);

// a(n) for every n in [lo, hi), written to `buf` in order. `buf_len` must
// equal hi - lo.
//
// # Safety
//
// `cfg` must be NULL or a live pointer from `absum_config_new`; `buf` must
// be valid for `buf_len` u16 writes.
enum AbsumStatus absum_sieve_a(const struct AbsumConfig *cfg,
                               uint64_t lo,
                               uint64_t hi,
                               uint16_t *buf,
                               size_t buf_len);

// The progression density constant c(r, k) (r, k >= 1). `out_tail`
// receives a truncation error estimate and may be NULL.
//
// # Safety
//
// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
// be valid for one double write, `out_tail` NULL or likewise.
enum AbsumStatus absum_crk(const struct AbsumConfig *cfg,
                           uint64_t r,
                           uint64_t k,
                           double *out,
                           double *out_tail);

// The mean value constant C of Q(x). `out_tail` receives a truncation
// error estimate and may be NULL.
//
// # Safety
//
// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
// be valid for one double write, `out_tail` NULL or likewise.
enum AbsumStatus absum_c_constant(const struct AbsumConfig *cfg, double *out, double *out_tail);

// The Riemann zeta function at an integer argument j >= 2.
//
// # Safety
//
// `out` must be valid for one double write.
enum AbsumStatus absum_zeta(uint32_t j, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABSUM_H */
