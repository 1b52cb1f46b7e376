/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#ifndef LPSI_H
#define LPSI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes; `LPSI_OK` is zero.
typedef enum LpsiStatus {
  LPSI_STATUS_OK = 0,
  LPSI_STATUS_NULL_POINTER = 1,
  LPSI_STATUS_PARSE = 2,
  LPSI_STATUS_DOMAIN = 3,
  LPSI_STATUS_HYPOTHESIS = 4,
  LPSI_STATUS_NUMERICAL = 5,
  LPSI_STATUS_PRECONDITION = 6,
  LPSI_STATUS_PANIC = 7,
} LpsiStatus;

// Opaque family handle.
typedef struct LpsiFamily LpsiFamily;

// Value with an absolute error bound.
typedef struct LpsiCertified {
  double value;
  double error_bound;
} LpsiCertified;

// Theorem bracket: `lower <= witness <= upper`.
typedef struct LpsiBracket {
  double lower;
  struct LpsiCertified witness;
  double upper;
  // Number of auxiliary checks evaluated.
  uint32_t checks;
  // 1 when the ordering and every auxiliary check hold.
  uint8_t holds;
} LpsiBracket;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a family spec such as `power:r=2` or `harmlog:gamma=2,K1=exp(2)`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be valid for writes.
enum LpsiStatus lpsi_family_parse(const char *spec, struct LpsiFamily **out);

// Releases a handle from [`lpsi_family_parse`]; null is ignored.
//
// # Safety
// `family` must be null or a live handle not freed before.
void lpsi_family_free(struct LpsiFamily *family);

// Writes the canonical spec of `family` (NUL-terminated, truncated to
// `len`) and returns the full length excluding the terminator.
//
// # Safety
// `family` must be a live handle; `buf` must be null or valid for `len` bytes.
size_t lpsi_family_describe(const struct LpsiFamily *family, char *buf, size_t len);

// `ψ(t)` for `t >= 1`.
//
// # Safety
// `family` must be a live handle; `out` must be valid for writes.
enum LpsiStatus lpsi_family_eval(const struct LpsiFamily *family, double t, double *out);

// `α(ψ;t) = ψ(t)/(t|ψ'(t)|)`.
//
// # Safety
// `family` must be a live handle; `out` must be valid for writes.
enum LpsiStatus lpsi_family_alpha(const struct LpsiFamily *family, double t, double *out);

// `inf_{t>=n} α(ψ;t)` (`upper == 0`) or `sup_{t>=n} α(ψ;t)` (`upper != 0`);
// an unbounded supremum is reported as `+inf`.
//
// # Safety
// `family` must be a live handle; `out` must be valid for writes.
enum LpsiStatus lpsi_family_alpha_extremum(const struct LpsiFamily *family,
                                           uint64_t n,
                                           uint8_t upper,
                                           double *out);

// `Σ_{k>=n} ψ^a(k) k^b` to absolute accuracy `tol`.
//
// # Safety
// `family` must be a live handle; `out` must be valid for writes.
enum LpsiStatus lpsi_tail_sum(const struct LpsiFamily *family,
                              double a,
                              double b,
                              uint64_t n,
                              double tol,
                              struct LpsiCertified *out);

// `ξ(s)` for `1 < s < ∞`.
//
// # Safety
// `out` must be valid for writes.
enum LpsiStatus lpsi_xi(double s, double *out);

// `(1/π)‖Ψ_{β,n}‖_s`; pass `INFINITY` for the uniform metric.
//
// # Safety
// `family` must be a live handle; `out` must be valid for writes.
enum LpsiStatus lpsi_fourier_upper(const struct LpsiFamily *family,
                                   double s,
                                   double beta,
                                   uint64_t n,
                                   double tol,
                                   struct LpsiCertified *out);

// Bracket of theorem `1..=4`; `s` is used by theorem 1 only.
//
// # Safety
// `family` must be a live handle; `out` must be valid for writes.
enum LpsiStatus lpsi_theorem_bracket(const struct LpsiFamily *family,
                                     uint32_t theorem,
                                     double s,
                                     double beta,
                                     uint64_t n,
                                     double tol,
                                     struct LpsiBracket *out);

// Copies the calling thread's last error message into `buf` (NUL-terminated,
// truncated to `len`) and returns its full length; 0 after a success.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
size_t lpsi_last_error_message(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *lpsi_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LPSI_H */
