#ifndef PTSYM_H
#define PTSYM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PtsymChoice {
  /**
   * Identity.
   */
  PTSYM_CHOICE_PLUS = 0,
  /**
   * σ_x.
   */
  PTSYM_CHOICE_MINUS = 1,
} PtsymChoice;

typedef enum PtsymPrescription {
  PTSYM_PRESCRIPTION_CPT = 0,
  PTSYM_PRESCRIPTION_HILBERT = 1,
} PtsymPrescription;

typedef enum PtsymStatus {
  PTSYM_STATUS_OK = 0,
  PTSYM_STATUS_NULL_POINTER = 1,
  PTSYM_STATUS_INVALID_ARGUMENT = 2,
  PTSYM_STATUS_BROKEN_PT_SYMMETRY = 3,
  PTSYM_STATUS_NUMERICAL = 4,
  PTSYM_STATUS_PANIC = 5,
} PtsymStatus;

typedef enum PtsymYOutcome {
  PTSYM_Y_OUTCOME_PLUS_Y = 0,
  PTSYM_Y_OUTCOME_MINUS_Y = 1,
} PtsymYOutcome;

/**
 * Opaque handle to a two-level PT-symmetric Hamiltonian.
 */
typedef struct PtsymHamiltonian PtsymHamiltonian;

typedef struct PtsymComplex {
  double re;
  double im;
} PtsymComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ptsym_version(void);

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *ptsym_last_error_message(void);

/**
 * Creates `H = s·[[i sin α, 1], [1, −i sin α]]`; requires `s > 0` and `|α| < π/2`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum PtsymStatus ptsym_hamiltonian_new(double s, double alpha, struct PtsymHamiltonian **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `h` must come from [`ptsym_hamiltonian_new`] and not be used afterwards.
 */
void ptsym_hamiltonian_free(struct PtsymHamiltonian *h);

/**
 * Writes the 2×2 matrix in row-major order.
 *
 * # Safety
 * `h` must be a live handle and `out` must hold 4 entries.
 */
enum PtsymStatus ptsym_hamiltonian_matrix(const struct PtsymHamiltonian *h,
                                          struct PtsymComplex *out);

/**
 * Writes the C operator, built from the eigenvectors, in row-major order.
 *
 * # Safety
 * `h` must be a live handle and `out` must hold 4 entries.
 */
enum PtsymStatus ptsym_hamiltonian_c_operator(const struct PtsymHamiltonian *h,
                                              struct PtsymComplex *out);

/**
 * Positive eigenvalue `s cos α` and the period `τ = π / (2 s cos α)`.
 *
 * # Safety
 * `h` must be a live handle; the out-pointers must be writable.
 */
enum PtsymStatus ptsym_hamiltonian_energy(const struct PtsymHamiltonian *h,
                                          double *out_energy,
                                          double *out_tau);

/**
 * CPT transition probability between two qubit states.
 *
 * # Safety
 * `h` must be a live handle, `a` and `b` must hold 2 entries each and `out`
 * must be writable.
 */
enum PtsymStatus ptsym_transition_probability(const struct PtsymHamiltonian *h,
                                              const struct PtsymComplex *a,
                                              const struct PtsymComplex *b,
                                              double *out);

/**
 * Bob's σ_y marginal under the Hilbert prescription, one-sided system.
 *
 * # Safety
 * `out` must be writable.
 */
enum PtsymStatus ptsym_marginal_hilbert(double alpha,
                                        enum PtsymChoice alice,
                                        enum PtsymYOutcome b,
                                        double *out);

/**
 * CPT marginal for the entangled pair. `alpha_b` NULL means a Hermitian Bob,
 * in which case `bob` is ignored. `over_bob` non-zero sums over Bob's
 * outcomes (Alice's marginal) instead of Alice's.
 *
 * # Safety
 * `alpha_b` must be NULL or readable; `out` must be writable.
 */
enum PtsymStatus ptsym_marginal_cpt(double alpha_a,
                                    const double *alpha_b,
                                    enum PtsymChoice alice,
                                    enum PtsymChoice bob,
                                    enum PtsymYOutcome which,
                                    int32_t over_bob,
                                    double *out);

/**
 * Entanglement entropy in bits of the evolved Bell pair.
 *
 * # Safety
 * `out` must be writable.
 */
enum PtsymStatus ptsym_entanglement_entropy(double alpha, enum PtsymPrescription p, double *out);

/**
 * `¼[3cos²ζ + sin²(3ζ)]`.
 */
double ptsym_chsh_win_probability(double zeta);

/**
 * Optimal ζ on `[0, π/4]` and the corresponding win probability.
 *
 * # Safety
 * Both out-pointers must be writable.
 */
enum PtsymStatus ptsym_chsh_optimize(double *out_zeta, double *out_p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PTSYM_H */
