#ifndef NSPSO_H
#define NSPSO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NspsoStatus {
  NSPSO_STATUS_OK = 0,
  NSPSO_STATUS_NULL_POINTER = 1,
  NSPSO_STATUS_INVALID_ARGUMENT = 2,
  NSPSO_STATUS_WRONG_ARITY = 3,
  NSPSO_STATUS_DOMAIN = 4,
  NSPSO_STATUS_INFEASIBLE_REGION = 5,
  NSPSO_STATUS_CONFIG = 6,
  NSPSO_STATUS_IO = 7,
  NSPSO_STATUS_PARSE = 8,
  NSPSO_STATUS_OUT_OF_RANGE = 9,
  NSPSO_STATUS_PANIC = 10,
} NspsoStatus;

typedef enum NspsoStopReason {
  NSPSO_STOP_REASON_BUDGET_EXHAUSTED = 0,
  NSPSO_STOP_REASON_ALL_LOW_NOVEL = 1,
  NSPSO_STOP_REASON_MAX_OUTER_ITERATIONS = 2,
} NspsoStopReason;

/**
 * Opaque benchmark problem.
 */
typedef struct NspsoProblem NspsoProblem;

/**
 * Opaque result of one run.
 */
typedef struct NspsoRunResult NspsoRunResult;

/**
 * Run parameters; fill with [`nspso_run_config_default`] then adjust.
 */
typedef struct NspsoRunConfig {
  size_t leader_count;
  size_t swarm_size;
  double radius_initial;
  double radius_increment;
  double novelty_threshold;
  double threshold_decay;
  double fitness_threshold;
  uint64_t max_iterations_outer;
  size_t inner_max_iterations;
  uint64_t max_fes;
  uint64_t seed;
} NspsoRunConfig;

typedef struct NspsoRankSum {
  uint8_t h;
  double rank_sum;
  double z;
  double p_value;
} NspsoRankSum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *nspso_last_error(void);

/**
 * Creates benchmark `number` (1 to 17) in `dim` dimensions. Rotated
 * problems draw their matrix from `rotation_seed`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum NspsoStatus nspso_problem_new(uint32_t number,
                                   size_t dim,
                                   uint64_t rotation_seed,
                                   struct NspsoProblem **out);

/**
 * # Safety
 * `problem` must be null or a handle from [`nspso_problem_new`] not yet freed.
 */
void nspso_problem_free(struct NspsoProblem *problem);

/**
 * Dimension of the problem, or 0 for a null handle.
 *
 * # Safety
 * `problem` must be null or a live handle.
 */
size_t nspso_problem_dimension(const struct NspsoProblem *problem);

/**
 * Whether the problem is bi-objective (use [`nspso_problem_evaluate_mmf`]).
 *
 * # Safety
 * `problem` must be null or a live handle.
 */
bool nspso_problem_is_multi_objective(const struct NspsoProblem *problem);

/**
 * Copies the search bounds into `lower` and `upper`, each of length `len`.
 *
 * # Safety
 * `lower` and `upper` must point to `len` writable doubles.
 */
enum NspsoStatus nspso_problem_bounds(const struct NspsoProblem *problem,
                                      double *lower,
                                      double *upper,
                                      size_t len);

/**
 * Scalar fitness of `x` (f1 to f14).
 *
 * # Safety
 * `x` must point to `len` doubles and `out` to one writable double.
 */
enum NspsoStatus nspso_problem_evaluate(const struct NspsoProblem *problem,
                                        const double *x,
                                        size_t len,
                                        double *out);

/**
 * Both objectives of `x` (f15 to f17).
 *
 * # Safety
 * `x` must point to `len` doubles; `f1` and `f2` to one writable double each.
 */
enum NspsoStatus nspso_problem_evaluate_mmf(const struct NspsoProblem *problem,
                                            const double *x,
                                            size_t len,
                                            double *f1,
                                            double *f2);

/**
 * Novelty score of two centres `d` apart with radius `r`.
 *
 * # Safety
 * `out` must point to one writable double.
 */
enum NspsoStatus nspso_novelty_score(double d, double r, double *out);

/**
 * Default parameters for a problem of dimension `dim`.
 *
 * # Safety
 * `out` must point to one writable [`NspsoRunConfig`].
 */
enum NspsoStatus nspso_run_config_default(size_t dim, struct NspsoRunConfig *out);

/**
 * Runs the controller (or the plain bare-bones baseline when `baseline` is
 * set) on `problem`. Bi-objective problems are minimized on their first
 * objective and also report IGD.
 *
 * # Safety
 * `config` must point to a readable config and `out` to writable storage
 * for one handle.
 */
enum NspsoStatus nspso_run(const struct NspsoProblem *problem,
                           const struct NspsoRunConfig *config,
                           bool baseline,
                           struct NspsoRunResult **out);

/**
 * # Safety
 * `result` must be null or a handle from [`nspso_run`] not yet freed.
 */
void nspso_result_free(struct NspsoRunResult *result);

/**
 * Best fitness found, NaN for a null handle.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
double nspso_result_best_fitness(const struct NspsoRunResult *result);

/**
 * IGD for bi-objective problems, NaN otherwise.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
double nspso_result_igd(const struct NspsoRunResult *result);

/**
 * # Safety
 * `result` must be null or a live handle.
 */
uint64_t nspso_result_evaluations(const struct NspsoRunResult *result);

/**
 * # Safety
 * `result` must be null or a live handle.
 */
uint64_t nspso_result_outer_iterations(const struct NspsoRunResult *result);

/**
 * # Safety
 * `result` must be null or a live handle.
 */
size_t nspso_result_archive_size(const struct NspsoRunResult *result);

/**
 * # Safety
 * `result` must be a live handle and `out` writable.
 */
enum NspsoStatus nspso_result_stop_reason(const struct NspsoRunResult *result,
                                          enum NspsoStopReason *out);

/**
 * Copies the best position into `buf`, which must hold exactly the problem
 * dimension.
 *
 * # Safety
 * `buf` must point to `len` writable doubles.
 */
enum NspsoStatus nspso_result_best_position(const struct NspsoRunResult *result,
                                            double *buf,
                                            size_t len);

/**
 * Number of entries in the best-so-far trace.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
size_t nspso_result_trace_len(const struct NspsoRunResult *result);

/**
 * Trace entry `index`: evaluations spent, best fitness so far and the
 * leader whose search produced it.
 *
 * # Safety
 * `evals`, `best_fitness` and `leader` must each point to writable storage.
 */
enum NspsoStatus nspso_result_trace_entry(const struct NspsoRunResult *result,
                                          size_t index,
                                          uint64_t *evals,
                                          double *best_fitness,
                                          size_t *leader);

/**
 * Two-sided rank-sum test of `a` against `b` at level `alpha`.
 *
 * # Safety
 * `a` and `b` must point to `na` and `nb` doubles; `out` must be writable.
 */
enum NspsoStatus nspso_wilcoxon_rank_sum(const double *a,
                                         size_t na,
                                         const double *b,
                                         size_t nb,
                                         double alpha,
                                         struct NspsoRankSum *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NSPSO_H */
