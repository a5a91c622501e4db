#ifndef SCREWLINE_H
#define SCREWLINE_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum ScrewlineStatus {
  SCREWLINE_STATUS_OK = 0,
  // A required pointer argument was null.
  SCREWLINE_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  SCREWLINE_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON, a schema violation or an out-of-range argument.
  SCREWLINE_STATUS_INVALID_INPUT = 3,
  // The library rejected well-formed input.
  SCREWLINE_STATUS_MATH_ERROR = 4,
  // A panic was caught at the boundary.
  SCREWLINE_STATUS_PANIC = 5,
} ScrewlineStatus;

// Step Hamiltonian on `[0, L]`.
typedef struct ScrewlineHamiltonian ScrewlineHamiltonian;

// Verification report of a pipeline run.
typedef struct ScrewlineReport ScrewlineReport;

// Screw function given by its data `(g₀, c, τ)`.
typedef struct ScrewlineScrew ScrewlineScrew;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null after a success.
// The pointer stays valid until the next call into the library on this thread.
const char *screwline_last_error(void);

// Releases a string returned by the library.
//
// # Safety
// `s` must be null or a pointer returned by this library that has not been freed.
void screwline_string_free(char *s);

// Factorizes a transfer matrix given as JSON `{"A","B","C","D"}` into a step Hamiltonian.
//
// # Safety
// `w_json` must be a NUL-terminated string and `out` a valid pointer to writable storage.
enum ScrewlineStatus screwline_factorize(const char *w_json, struct ScrewlineHamiltonian **out);

// Parses a Hamiltonian from JSON `{"segments": [...]}`.
//
// # Safety
// `h_json` must be a NUL-terminated string and `out` a valid pointer to writable storage.
enum ScrewlineStatus screwline_hamiltonian_from_json(const char *h_json,
                                                     struct ScrewlineHamiltonian **out);

// Number of segments of `h`, or 0 when `h` is null.
//
// # Safety
// `h` must be null or a live handle.
uintptr_t screwline_hamiltonian_segment_count(const struct ScrewlineHamiltonian *h);

// Writes the length and angle (radians) of segment `k`.
//
// # Safety
// `h` must be a live handle; `length` and `theta` must be valid for writes.
enum ScrewlineStatus screwline_hamiltonian_segment(const struct ScrewlineHamiltonian *h,
                                                   uintptr_t k,
                                                   double *length,
                                                   double *theta);

// Serializes `h` as JSON. The string must be released with [`screwline_string_free`].
//
// # Safety
// `h` must be a live handle and `out` valid for writes.
enum ScrewlineStatus screwline_hamiltonian_to_json(const struct ScrewlineHamiltonian *h,
                                                   char **out);

// Fundamental solution `W(t, z)` of `h`, written row-major as
// `[A.re, A.im, B.re, B.im, C.re, C.im, D.re, D.im]`.
//
// # Safety
// `h` must be a live handle and `out` valid for 8 writes.
enum ScrewlineStatus screwline_fundamental_solution(const struct ScrewlineHamiltonian *h,
                                                    double t,
                                                    double z_re,
                                                    double z_im,
                                                    double *out);

// Releases a Hamiltonian handle.
//
// # Safety
// `h` must be null or a handle from this library that has not been freed.
void screwline_hamiltonian_free(struct ScrewlineHamiltonian *h);

// Krein string of a rational string function `q` given as `{"num","den"}`, as JSON.
//
// # Safety
// `q_json` must be a NUL-terminated string and `out` valid for writes.
enum ScrewlineStatus screwline_string(const char *q_json, char **out);

// The screw function `g₀(t) = −t²/2 + cos t − 1`.
struct ScrewlineScrew *screwline_screw_example_g0(void);

// Parses a screw function from JSON `{"g0","c","tau"}`.
//
// # Safety
// `g_json` must be a NUL-terminated string and `out` valid for writes.
enum ScrewlineStatus screwline_screw_from_json(const char *g_json, struct ScrewlineScrew **out);

// Evaluates `g(t)`.
//
// # Safety
// `g` must be a live handle; `re` and `im` must be valid for writes.
enum ScrewlineStatus screwline_screw_eval(const struct ScrewlineScrew *g,
                                          double t,
                                          double *re,
                                          double *im);

// Smallest eigenvalue of the Gram matrix of `G_g` on `n` equispaced points of
// `[lo, hi]`; `pass` is set when it is at least `−tol`.
//
// # Safety
// `g` must be a live handle; `min_eigenvalue` and `pass` must be valid for writes.
enum ScrewlineStatus screwline_screw_pd_check(const struct ScrewlineScrew *g,
                                              double lo,
                                              double hi,
                                              uintptr_t n,
                                              double tol,
                                              double *min_eigenvalue,
                                              bool *pass);

// Releases a screw-function handle.
//
// # Safety
// `g` must be null or a handle from this library that has not been freed.
void screwline_screw_free(struct ScrewlineScrew *g);

// Runs the checks of `example` (`"g0"`, `"pw"` or `"appendix"`). A report is
// produced even when checks fail; inspect it with [`screwline_report_pass`].
// `r` and `trunc` only affect `"pw"`.
//
// # Safety
// `example` must be a NUL-terminated string and `out` valid for writes.
enum ScrewlineStatus screwline_pipeline(const char *example,
                                        uint64_t seed,
                                        double r,
                                        uintptr_t trunc,
                                        struct ScrewlineReport **out);

// Whether every check of `rep` passed; false for null.
//
// # Safety
// `rep` must be null or a live handle.
bool screwline_report_pass(const struct ScrewlineReport *rep);

// Number of checks in `rep`; 0 for null.
//
// # Safety
// `rep` must be null or a live handle.
uintptr_t screwline_report_check_count(const struct ScrewlineReport *rep);

// Serializes `rep` as JSON. The string must be released with [`screwline_string_free`].
//
// # Safety
// `rep` must be a live handle and `out` valid for writes.
enum ScrewlineStatus screwline_report_to_json(const struct ScrewlineReport *rep, char **out);

// Releases a report handle.
//
// # Safety
// `rep` must be null or a handle from this library that has not been freed.
void screwline_report_free(struct ScrewlineReport *rep);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCREWLINE_H */
