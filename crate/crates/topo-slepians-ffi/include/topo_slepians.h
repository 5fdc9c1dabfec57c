#ifndef TOPO_SLEPIANS_H
#define TOPO_SLEPIANS_H

/* Generated from the Rust sources by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an FFI call. Zero means success; anything else is an error and
 * [`ts_last_error_message`] carries the details.
 */
typedef enum TsStatus {
  TS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TS_STATUS_NULL_POINTER = 1,
  /**
   * Rejected input: bad indices, malformed simplices, empty sets, zero
   * signals, or out-of-range parameters.
   */
  TS_STATUS_INVALID_INPUT = 2,
  /**
   * Two arguments that must agree in size do not.
   */
  TS_STATUS_DIMENSION_MISMATCH = 3,
  /**
   * An eigensolve, spectral partition, frame certificate, or pursuit
   * failed numerically.
   */
  TS_STATUS_NUMERICAL_FAILURE = 4,
  /**
   * The caller-provided buffer is smaller than the required length.
   */
  TS_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * The callee panicked; the library state is still consistent but the
   * call produced nothing.
   */
  TS_STATUS_INTERNAL_PANIC = 6,
} TsStatus;

/**
 * Simplicial complex handle.
 */
typedef struct TsComplex TsComplex;

/**
 * Dictionary handle: concentrated atoms plus the harmonic basis.
 */
typedef struct TsDictionary TsDictionary;

/**
 * Sparse representation handle produced by the pursuit routines.
 */
typedef struct TsSparseCode TsSparseCode;

/**
 * Edge-space spectrum handle: eigenpairs split into gradient, solenoidal,
 * and harmonic groups.
 */
typedef struct TsSpectrum TsSpectrum;

/**
 * Dense vector handle used for flows and noisy signals.
 */
typedef struct TsVector TsVector;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the library version as a static NUL-terminated string.
 */
const char *ts_version(void);

/**
 * Returns the message of the most recent failure on this thread, or an
 * empty string if none occurred. The pointer is valid until the next
 * failing ts_* call on the same thread; do not free it.
 */
const char *ts_last_error_message(void);

/**
 * Builds a simplicial complex from 0-based vertex indices.
 *
 * `edges` holds `edge_count` pairs (flattened), `triangles` holds
 * `triangle_count` triples (flattened). Either array may be null when its
 * count is zero. On success `*out` owns the new complex.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable `u32` values, `triangles`
 * to `3 * triangle_count`, and `out` must be a valid writable pointer.
 */
enum TsStatus ts_complex_build(size_t vertex_count,
                               const uint32_t *edges,
                               size_t edge_count,
                               const uint32_t *triangles,
                               size_t triangle_count,
                               struct TsComplex **out);

/**
 * Releases a complex handle. Null is a no-op.
 *
 * # Safety
 * `c` must be a pointer obtained from this library and not yet freed.
 */
void ts_complex_free(struct TsComplex *c);

/**
 * Reports vertex, edge, and triangle counts. Each output is optional.
 *
 * # Safety
 * `c` must be a live complex handle; non-null outputs must be writable.
 */
enum TsStatus ts_complex_counts(const struct TsComplex *c,
                                size_t *vertices,
                                size_t *edges,
                                size_t *triangles);

/**
 * Copies the canonical edge list as `2 * edge_count` vertex indices
 * (ascending within each pair, pairs in the library's canonical order).
 *
 * # Safety
 * `buf` must be writable for `capacity` `u32` values.
 */
enum TsStatus ts_complex_copy_edges(const struct TsComplex *c, uint32_t *buf, size_t capacity);

/**
 * Builds the hexagonal benchmark: a triangulated hex-cell grid scaled to
 * the given extent, plus the unit-norm flow of the built-in localized field
 * through the cell interfaces.
 *
 * `three_point` selects 3-point Gauss-Legendre flux quadrature when
 * nonzero, midpoint otherwise. `out_flow` may be null to skip the flow.
 *
 * # Safety
 * `out_complex` must be writable; `out_flow` must be writable or null.
 */
enum TsStatus ts_hex_benchmark(size_t rows,
                               size_t cols,
                               double xmin,
                               double xmax,
                               double ymin,
                               double ymax,
                               uint8_t three_point,
                               struct TsComplex **out_complex,
                               struct TsVector **out_flow);

/**
 * Creates a vector handle from raw values.
 *
 * # Safety
 * `values` must point to `len` readable doubles; `out` must be writable.
 */
enum TsStatus ts_vector_create(const double *values, size_t len, struct TsVector **out);

/**
 * Returns the length of a vector, or 0 for null.
 *
 * # Safety
 * `v` must be a live vector handle or null.
 */
size_t ts_vector_len(const struct TsVector *v);

/**
 * Copies vector contents into a caller buffer.
 *
 * # Safety
 * `buf` must be writable for `capacity` doubles.
 */
enum TsStatus ts_vector_copy(const struct TsVector *v, double *buf, size_t capacity);

/**
 * Releases a vector handle. Null is a no-op.
 *
 * # Safety
 * `v` must be a pointer obtained from this library and not yet freed.
 */
void ts_vector_free(struct TsVector *v);

/**
 * Adds seeded Gaussian noise with standard deviation `sigma`, returning a
 * new vector. The same `(input, sigma, seed)` always yields the same
 * output.
 *
 * # Safety
 * `v` must be a live vector handle; `out` must be writable.
 */
enum TsStatus ts_vector_add_noise(const struct TsVector *v,
                                  double sigma,
                                  uint64_t seed,
                                  struct TsVector **out);

/**
 * Computes the edge-space spectrum of a complex: eigenpairs of the first
 * Hodge Laplacian, partitioned into gradient, solenoidal, and harmonic
 * groups.
 *
 * # Safety
 * `c` must be a live complex handle; `out` must be writable.
 */
enum TsStatus ts_spectrum_build(const struct TsComplex *c, struct TsSpectrum **out);

/**
 * Releases a spectrum handle. Null is a no-op.
 *
 * # Safety
 * `s` must be a pointer obtained from this library and not yet freed.
 */
void ts_spectrum_free(struct TsSpectrum *s);

/**
 * Reports the sizes of the three spectral groups. Each output is optional;
 * the three counts always sum to the edge count.
 *
 * # Safety
 * `s` must be a live spectrum handle; non-null outputs must be writable.
 */
enum TsStatus ts_spectrum_counts(const struct TsSpectrum *s,
                                 size_t *gradient,
                                 size_t *solenoidal,
                                 size_t *harmonic);

/**
 * Builds the concentrated dictionary for a complex: one block of atoms per
 * triangle-adjacency set, one per vertex-adjacency set, plus the harmonic
 * basis. `k_tilde` caps the atoms kept per set; pass 0 to keep every atom
 * with nonzero concentration. `hops` is the adjacency radius used to grow
 * the concentration sets (1 is the default layout).
 *
 * # Safety
 * `c` and `s` must be live handles; `out` must be writable.
 */
enum TsStatus ts_dictionary_build(const struct TsComplex *c,
                                  const struct TsSpectrum *s,
                                  size_t k_tilde,
                                  size_t hops,
                                  struct TsDictionary **out);

/**
 * Releases a dictionary handle. Null is a no-op.
 *
 * # Safety
 * `d` must be a pointer obtained from this library and not yet freed.
 */
void ts_dictionary_free(struct TsDictionary *d);

/**
 * Reports dictionary dimensions. Each output is optional.
 *
 * # Safety
 * `d` must be a live dictionary handle; non-null outputs must be writable.
 */
enum TsStatus ts_dictionary_counts(const struct TsDictionary *d,
                                   size_t *edge_count,
                                   size_t *atom_count);

/**
 * Copies the atom matrix in column-major order: atom `j` occupies entries
 * `[j * edge_count, (j + 1) * edge_count)`.
 *
 * # Safety
 * `buf` must be writable for `capacity` doubles.
 */
enum TsStatus ts_dictionary_copy_atoms(const struct TsDictionary *d, double *buf, size_t capacity);

/**
 * Certifies the frame bounds of a dictionary against the spectrum it was
 * built from. Outputs (each optional):
 * - `lower_bound`: smallest eigenvalue of the frame operator,
 * - `upper_bound`: largest eigenvalue (Rayleigh bound),
 * - `counting_bound`: the set-counting upper bound,
 * - `complete`: 1 when the atoms span both non-harmonic subspaces,
 * - `is_frame`: 1 when the lower bound clears the rank tolerance.
 *
 * # Safety
 * `d` and `s` must be live handles; non-null outputs must be writable.
 */
enum TsStatus ts_frame_certify(const struct TsDictionary *d,
                               const struct TsSpectrum *s,
                               double *lower_bound,
                               double *upper_bound,
                               double *counting_bound,
                               uint8_t *complete,
                               uint8_t *is_frame);

/**
 * Validates frame bounds empirically: draws `trials` seeded random unit
 * signals and counts analysis-energy quotients falling outside the
 * certified interval (after tolerance). Writes the violation count.
 *
 * # Safety
 * `d` and `s` must be live handles; `violations` must be writable or null.
 */
enum TsStatus ts_frame_check_empirical(const struct TsDictionary *d,
                                       const struct TsSpectrum *s,
                                       size_t trials,
                                       uint64_t seed,
                                       size_t *violations);

/**
 * Error-constrained pursuit: greedily selects atoms until the residual
 * energy fraction drops to `epsilon`, or `max_iter` atoms were taken
 * (0 means no cap).
 *
 * # Safety
 * `d` must be a live dictionary handle, `x` must point to `len` readable
 * doubles, and `out` must be writable.
 */
enum TsStatus ts_omp_error(const struct TsDictionary *d,
                           const double *x,
                           size_t len,
                           double epsilon,
                           size_t max_iter,
                           struct TsSparseCode **out);

/**
 * Sparsity-constrained pursuit: selects at most `s` atoms.
 *
 * # Safety
 * `d` must be a live dictionary handle, `x` must point to `len` readable
 * doubles, and `out` must be writable.
 */
enum TsStatus ts_omp_sparsity(const struct TsDictionary *d,
                              const double *x,
                              size_t len,
                              size_t s,
                              struct TsSparseCode **out);

/**
 * Returns the number of selected atoms, or 0 for null.
 *
 * # Safety
 * `code` must be a live sparse-code handle or null.
 */
size_t ts_sparse_code_len(const struct TsSparseCode *code);

/**
 * Returns the final residual norm, or NaN for null.
 *
 * # Safety
 * `code` must be a live sparse-code handle or null.
 */
double ts_sparse_code_residual_norm(const struct TsSparseCode *code);

/**
 * Copies the selected atom indices and their coefficients. Either output
 * may be null to skip it; `capacity` applies to both.
 *
 * # Safety
 * Non-null buffers must be writable for `capacity` elements.
 */
enum TsStatus ts_sparse_code_copy(const struct TsSparseCode *code,
                                  size_t *support,
                                  double *coefficients,
                                  size_t capacity);

/**
 * Reconstructs the signal approximation from a sparse code and the
 * dictionary it was computed against.
 *
 * # Safety
 * `code` and `d` must be live handles; `buf` must be writable for
 * `capacity` doubles.
 */
enum TsStatus ts_sparse_code_reconstruct(const struct TsSparseCode *code,
                                         const struct TsDictionary *d,
                                         double *buf,
                                         size_t capacity);

/**
 * Releases a sparse-code handle. Null is a no-op.
 *
 * # Safety
 * `code` must be a pointer obtained from this library and not yet freed.
 */
void ts_sparse_code_free(struct TsSparseCode *code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPO_SLEPIANS_H */
