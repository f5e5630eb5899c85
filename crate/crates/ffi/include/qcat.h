#ifndef QCAT_H
#define QCAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QcatStatus {
  QCAT_STATUS_OK = 0,
  QCAT_STATUS_NULL_POINTER = 1,
  QCAT_STATUS_INVALID_ARGUMENT = 2,
  QCAT_STATUS_NOT_UNITARY = 3,
  QCAT_STATUS_NOT_NORMAL_FORM = 4,
  QCAT_STATUS_PRECONDITION = 5,
  QCAT_STATUS_NUMERICAL = 6,
  QCAT_STATUS_PANIC = 7,
} QcatStatus;

/**
 * Which local factor of a decomposition `e^{iγ} (u⊗v) U_s (ũ⊗ṽ)` to fetch.
 */
typedef enum QcatLocal {
  QCAT_LOCAL_U = 0,
  QCAT_LOCAL_V = 1,
  QCAT_LOCAL_U_TILDE = 2,
  QCAT_LOCAL_V_TILDE = 3,
} QcatLocal;

typedef enum QcatVerdictKind {
  QCAT_VERDICT_KIND_LOCC_SIMULABLE = 0,
  QCAT_VERDICT_KIND_CATALYTIC_SIMULABLE = 1,
  QCAT_VERDICT_KIND_FORBIDDEN = 2,
  QCAT_VERDICT_KIND_UNDECIDED = 3,
} QcatVerdictKind;

/**
 * The result of a two-qubit canonical decomposition.
 */
typedef struct QcatKak QcatKak;

/**
 * A normalised pure state on labelled qubits.
 */
typedef struct QcatState QcatState;

/**
 * A unitary matrix whose dimension is a power of two.
 */
typedef struct QcatUnitary QcatUnitary;

typedef struct QcatParams {
  double c1;
  double c2;
  double c3;
} QcatParams;

typedef struct QcatCatalysisReport {
  double max_state_residual;
  double min_catalyst_fidelity;
  size_t trials;
  uint64_t seed;
} QcatCatalysisReport;

/**
 * Classification result. `c4_lo`/`c4_hi` are meaningful only when
 * `has_c4_interval` is true.
 */
typedef struct QcatVerdict {
  enum QcatVerdictKind kind;
  bool has_c4_interval;
  double c4_lo;
  double c4_hi;
} QcatVerdict;

typedef struct QcatNogoReport {
  double min_over_xy_of_max_overlap;
  double bound;
  size_t samples;
  bool bound_holds;
} QcatNogoReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qcat_version(void);

/**
 * Message for the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next `qcat_*` call on the same thread.
 */
const char *qcat_last_error(void);

/**
 * Builds a unitary from `2 * dim * dim` interleaved doubles.
 */
enum QcatStatus qcat_unitary_new(size_t dim, const double *data, struct QcatUnitary **out);

void qcat_unitary_free(struct QcatUnitary *u);

/**
 * Dimension of `u`, or 0 for a null handle.
 */
size_t qcat_unitary_dim(const struct QcatUnitary *u);

/**
 * Copies the interleaved entries of `u` into `out`, which must hold `len`
 * doubles with `len >= 2 * dim * dim`.
 */
enum QcatStatus qcat_unitary_entries(const struct QcatUnitary *u, double *out, size_t len);

/**
 * `U_s(c1, c2, c3) = exp(-i Σ c_k σ_k⊗σ_k)`.
 */
enum QcatStatus qcat_u_s(struct QcatParams p, struct QcatUnitary **out);

enum QcatStatus qcat_kak_decompose(const struct QcatUnitary *u, struct QcatKak **out);

void qcat_kak_free(struct QcatKak *k);

enum QcatStatus qcat_kak_params(const struct QcatKak *k, struct QcatParams *out);

/**
 * Reassembly residual, or NaN for a null handle.
 */
double qcat_kak_residual(const struct QcatKak *k);

/**
 * Global phase `γ`, or NaN for a null handle.
 */
double qcat_kak_global_phase(const struct QcatKak *k);

/**
 * Copies one 2×2 local factor into a new unitary handle.
 */
enum QcatStatus qcat_kak_local(const struct QcatKak *k,
                               enum QcatLocal which,
                               struct QcatUnitary **out);

enum QcatStatus qcat_lu_equivalent(const struct QcatUnitary *a,
                                   const struct QcatUnitary *b,
                                   bool *out);

enum QcatStatus qcat_verify_catalysis(struct QcatParams p,
                                      size_t trials,
                                      uint64_t seed,
                                      struct QcatCatalysisReport *out);

/**
 * Classifies whether `source` can simulate `target`. Both must satisfy
 * `c1 >= c2 >= |c3|`.
 */
enum QcatStatus qcat_classify_simulation(struct QcatParams source,
                                         struct QcatParams target,
                                         struct QcatVerdict *out);

enum QcatStatus qcat_nogo_search(double c1,
                                 double c2,
                                 size_t budget,
                                 uint64_t seed,
                                 struct QcatNogoReport *out);

/**
 * Builds a state on `n_qubits` labelled qubits from `2 << n_qubits`
 * interleaved doubles in big-endian basis order.
 */
enum QcatStatus qcat_state_new(size_t n_qubits,
                               const char *const *labels,
                               const double *amplitudes,
                               struct QcatState **out);

void qcat_state_free(struct QcatState *s);

/**
 * Largest squared Schmidt coefficient across the cut that puts qubit `k`
 * (in register order) on the left when bit `k` of `left_mask` is set.
 */
enum QcatStatus qcat_max_schmidt_prob(const struct QcatState *s, uint64_t left_mask, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCAT_H */
