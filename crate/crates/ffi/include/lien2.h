#ifndef LIEN2_H
#define LIEN2_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

/**
 * Result code of every fallible call.
 */
typedef enum Lien2Status {
  LIEN2_STATUS_OK = 0,
  LIEN2_STATUS_NULL_POINTER = 1,
  LIEN2_STATUS_INVALID_PARAMETER = 2,
  LIEN2_STATUS_DIMENSION_MISMATCH = 3,
  LIEN2_STATUS_UNSUPPORTED_FAMILY = 4,
  LIEN2_STATUS_ALGEBRA_MISMATCH = 5,
  LIEN2_STATUS_BRANCH_UNDEFINED = 6,
  LIEN2_STATUS_NOT_IN_FOLIATED_MANIFOLD = 7,
  LIEN2_STATUS_LEAF_MISMATCH = 8,
  LIEN2_STATUS_PARSE_ERROR = 9,
  LIEN2_STATUS_INVALID_UTF8 = 10,
  LIEN2_STATUS_BUFFER_TOO_SMALL = 11,
  LIEN2_STATUS_PANIC = 12,
} Lien2Status;

/**
 * Opaque handle to a Lie algebra.
 */
typedef struct Lien2Algebra Lien2Algebra;

/**
 * Opaque handle to a matrix representation.
 */
typedef struct Lien2Representation Lien2Representation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *lien2_status_str(enum Lien2Status status);

/**
 * Copies the last error message of this thread into `buf`.
 *
 * # Safety
 * `buf` must point to `len` writable bytes.
 */
enum Lien2Status lien2_last_error(char *buf, size_t len);

/**
 * Builds an algebra from a family string such as `g6_2k_1(k=1)`.
 *
 * # Safety
 * `family` must be a NUL-terminated string; `out` must be writable.
 */
enum Lien2Status lien2_algebra_new(const char *family, struct Lien2Algebra **out);

/**
 * Releases an algebra. Null is ignored.
 *
 * # Safety
 * `alg` must come from [`lien2_algebra_new`] and not be used afterwards.
 */
void lien2_algebra_free(struct Lien2Algebra *alg);

/**
 * Dimension of the algebra, 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
size_t lien2_algebra_dim(const struct Lien2Algebra *alg);

/**
 * Largest Jacobi identity defect over basis triples.
 *
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
enum Lien2Status lien2_algebra_jacobi_defect(const struct Lien2Algebra *alg, double *out);

/**
 * Writes `exp(ad_X)` (n×n, row-major) into `out` of capacity `out_len`.
 *
 * # Safety
 * `x` must hold `n` doubles and `out` `out_len` doubles.
 */
enum Lien2Status lien2_exp_ad(const struct Lien2Algebra *alg,
                              const double *x,
                              size_t n,
                              double *out,
                              size_t out_len);

/**
 * `Tr exp(ad_X)` from its closed form.
 *
 * # Safety
 * `x` must hold `n` doubles; `out` must be writable.
 */
enum Lien2Status lien2_character_ad(const struct Lien2Algebra *alg,
                                    const double *x,
                                    size_t n,
                                    double *out);

/**
 * Dimension of the coadjoint orbit through `f`.
 *
 * # Safety
 * `f` must hold `n` doubles; `out` must be writable.
 */
enum Lien2Status lien2_orbit_dimension(const struct Lien2Algebra *alg,
                                       const double *f,
                                       size_t n,
                                       size_t *out);

/**
 * Writes the orbit kind name (e.g. `half_plane`) through `f` into `buf`.
 *
 * # Safety
 * `f` must hold `n` doubles and `buf` `len` bytes.
 */
enum Lien2Status lien2_orbit_kind(const struct Lien2Algebra *alg,
                                  const double *f,
                                  size_t n,
                                  char *buf,
                                  size_t len);

/**
 * Whether `f` lies in the union of maximal orbits (`f_2 ≠ 0`).
 *
 * # Safety
 * `f` must hold `n` doubles; `out` must be writable.
 */
enum Lien2Status lien2_in_foliated_manifold(const struct Lien2Algebra *alg,
                                            const double *f,
                                            size_t n,
                                            bool *out);

/**
 * Writes the C*-algebra label of the foliation into `buf`.
 *
 * # Safety
 * `buf` must hold `len` bytes.
 */
enum Lien2Status lien2_connes_label(const struct Lien2Algebra *alg, char *buf, size_t len);

/**
 * Image of `x` under the map h, written to `out` (length `n`), with the
 * leaf identity residual in `residual` (may be null).
 *
 * # Safety
 * `x` and `out` must hold `n` doubles.
 */
enum Lien2Status lien2_equivalence_h(const double *x, size_t n, double *out, double *residual);

/**
 * Builds the faithful representation used for the bound on its minimal
 * degree.
 *
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
enum Lien2Status lien2_faithful_rep(const struct Lien2Algebra *alg,
                                    struct Lien2Representation **out);

/**
 * Releases a representation. Null is ignored.
 *
 * # Safety
 * `rep` must come from [`lien2_faithful_rep`] and not be used afterwards.
 */
void lien2_rep_free(struct Lien2Representation *rep);

/**
 * Matrix degree of a representation, 0 for a null handle.
 *
 * # Safety
 * `rep` must be null or a live handle.
 */
size_t lien2_rep_degree(const struct Lien2Representation *rep);

/**
 * Writes `ρ(X)` (degree×degree, row-major) into `out`.
 *
 * # Safety
 * `x` must hold `n` doubles and `out` `out_len` doubles.
 */
enum Lien2Status lien2_rep_eval(const struct Lien2Representation *rep,
                                const double *x,
                                size_t n,
                                double *out,
                                size_t out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIEN2_H */
