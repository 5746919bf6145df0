/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef NNFOPT_H
#define NNFOPT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Algorithm selector and report. `Auto` is only accepted as input.
 */
typedef enum NnfoptAlgorithm {
  NNFOPT_ALGORITHM_AUTO = 0,
  NNFOPT_ALGORITHM_DNNF_LINEAR = 1,
  NNFOPT_ALGORITHM_DNF_MONOTONE = 2,
  NNFOPT_ALGORITHM_FPT_POLY = 3,
  NNFOPT_ALGORITHM_BRUTE = 4,
} NnfoptAlgorithm;

/**
 * Result code of every fallible call.
 */
typedef enum NnfoptStatus {
  NNFOPT_STATUS_OK = 0,
  /**
   * The constraint has no model.
   */
  NNFOPT_STATUS_NO_SOLUTION = 1,
  /**
   * Null pointer, bad UTF-8, out-of-range literal or similar.
   */
  NNFOPT_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Malformed NNF, DIMACS or weighted-base text.
   */
  NNFOPT_STATUS_FORMAT = 3,
  /**
   * No tractable algorithm applies and enumeration is over its cap.
   */
  NNFOPT_STATUS_INTRACTABLE = 4,
  NNFOPT_STATUS_IO = 5,
  /**
   * The requested algorithm does not accept this circuit, base or aggregator.
   */
  NNFOPT_STATUS_PRECONDITION = 6,
  /**
   * A bug inside the library; the message says where.
   */
  NNFOPT_STATUS_INTERNAL = 7,
} NnfoptStatus;

/**
 * Opaque NNF circuit.
 */
typedef struct NnfoptCircuit NnfoptCircuit;

/**
 * Opaque weighted base with its aggregator.
 */
typedef struct NnfoptObjective NnfoptObjective;

/**
 * Opaque optimization outcome.
 */
typedef struct NnfoptResult NnfoptResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *nnfopt_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *nnfopt_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void nnfopt_string_free(char *s);

/**
 * Parses c2d NNF text.
 *
 * # Safety
 * `nnf` must be a NUL-terminated string and `out` a writable pointer.
 */
enum NnfoptStatus nnfopt_circuit_parse(const char *nnf, struct NnfoptCircuit **out);

/**
 * Reads a c2d NNF file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum NnfoptStatus nnfopt_circuit_load(const char *path, struct NnfoptCircuit **out);

/**
 * Compiles DIMACS CNF text into a decomposable circuit.
 *
 * # Safety
 * `cnf` must be a NUL-terminated string and `out` a writable pointer.
 */
enum NnfoptStatus nnfopt_circuit_compile_dimacs(const char *cnf, struct NnfoptCircuit **out);

/**
 * # Safety
 * `c` must be null or a live circuit handle.
 */
void nnfopt_circuit_free(struct NnfoptCircuit *c);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live circuit handle.
 */
uint32_t nnfopt_circuit_num_vars(const struct NnfoptCircuit *c);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live circuit handle.
 */
size_t nnfopt_circuit_num_nodes(const struct NnfoptCircuit *c);

/**
 * # Safety
 * `c` must be null or a live circuit handle.
 */
bool nnfopt_circuit_is_decomposable(const struct NnfoptCircuit *c);

/**
 * Linear-time consistency test; needs a decomposable circuit.
 *
 * # Safety
 * `c` must be a live circuit handle and `out` a writable pointer.
 */
enum NnfoptStatus nnfopt_circuit_consistent(const struct NnfoptCircuit *c, bool *out);

/**
 * Conditions on `n` DIMACS literals and conjoins them back, so the result
 * has exactly the models of the circuit that extend the term.
 *
 * # Safety
 * `c` must be a live circuit handle, `lits` must point to `n` integers
 * (or be null when `n` is 0) and `out` must be writable.
 */
enum NnfoptStatus nnfopt_circuit_condition(const struct NnfoptCircuit *c,
                                           const int64_t *lits,
                                           size_t n,
                                           struct NnfoptCircuit **out);

/**
 * c2d NNF text of the circuit, or null for a null handle.
 *
 * # Safety
 * `c` must be null or a live circuit handle.
 */
char *nnfopt_circuit_serialize(const struct NnfoptCircuit *c);

/**
 * Parses weighted-base text. `f` items are read relative to `base_dir`;
 * with a null `base_dir` they are rejected.
 *
 * # Safety
 * `wb` must be a NUL-terminated string, `base_dir` null or NUL-terminated,
 * and `out` writable.
 */
enum NnfoptStatus nnfopt_objective_parse(const char *wb,
                                         const char *base_dir,
                                         struct NnfoptObjective **out);

/**
 * Reads a weighted-base file and the circuit files it refers to.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum NnfoptStatus nnfopt_objective_load(const char *path, struct NnfoptObjective **out);

/**
 * Number of weighted items, or 0 for a null handle.
 *
 * # Safety
 * `o` must be null or a live objective handle.
 */
size_t nnfopt_objective_num_items(const struct NnfoptObjective *o);

/**
 * # Safety
 * `o` must be null or a live objective handle.
 */
void nnfopt_objective_free(struct NnfoptObjective *o);

/**
 * Minimizes the objective over the circuit's models. `n_cap` and `jobs`
 * of 0 select the defaults. Returns `Ok` whenever the search ran; an
 * inconsistent circuit yields a result whose status is `NoSolution`.
 *
 * # Safety
 * `c` and `o` must be live handles and `out` writable.
 */
enum NnfoptStatus nnfopt_optimize(const struct NnfoptCircuit *c,
                                  const struct NnfoptObjective *o,
                                  enum NnfoptAlgorithm algorithm,
                                  size_t n_cap,
                                  size_t jobs,
                                  struct NnfoptResult **out);

/**
 * `Ok` if an optimal model was found, `NoSolution` otherwise.
 *
 * # Safety
 * `r` must be a live result handle.
 */
enum NnfoptStatus nnfopt_result_status(const struct NnfoptResult *r);

/**
 * The algorithm that produced the result.
 *
 * # Safety
 * `r` must be a live result handle.
 */
enum NnfoptAlgorithm nnfopt_result_algorithm(const struct NnfoptResult *r);

/**
 * Length of the model, 0 when there is none.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
uint32_t nnfopt_result_num_vars(const struct NnfoptResult *r);

/**
 * Writes the model as 0/1 bytes, variable 1 first. `len` must be at least
 * [`nnfopt_result_num_vars`].
 *
 * # Safety
 * `r` must be a live result handle and `buf` must have room for `len` bytes.
 */
enum NnfoptStatus nnfopt_result_model(const struct NnfoptResult *r, uint8_t *buf, size_t len);

/**
 * Optimal score as text (`4`, `-3/2`, `(1, 0)`), or null without a model.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
char *nnfopt_result_score(const struct NnfoptResult *r);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
void nnfopt_result_free(struct NnfoptResult *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NNFOPT_H */
