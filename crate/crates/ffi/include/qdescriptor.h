/* SPDX-License-Identifier: Apache-2.0 */

#ifndef QDESCRIPTOR_H
#define QDESCRIPTOR_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QdStatus {
  QD_STATUS_OK = 0,
  QD_STATUS_NULL_POINTER = 1,
  QD_STATUS_INVALID_ARGUMENT = 2,
  QD_STATUS_PARSE = 3,
  QD_STATUS_OUT_OF_RANGE = 4,
  QD_STATUS_NOT_SHARP = 5,
  QD_STATUS_ZERO_WEIGHT = 6,
  QD_STATUS_SIZE_CAP = 7,
  QD_STATUS_IO = 8,
  QD_STATUS_INTERNAL = 9,
} QdStatus;

typedef enum QdVerdict {
  QD_VERDICT_SHARP = 0,
  QD_VERDICT_ANTI_SHARP = 1,
  QD_VERDICT_NON_SHARP = 2,
  QD_VERDICT_UNENTANGLED = 3,
} QdVerdict;

// Opaque circuit handle.
typedef struct QdCircuit QdCircuit;

// Opaque handle to the descriptors at every slot boundary of a run.
typedef struct QdTrace QdTrace;

// Foliation summary for an ordered (control, target) pair.
typedef struct QdFoliation {
  enum QdVerdict verdict;
  bool entangled;
  // `<P+[q_Cz]>`
  double proj_plus;
  double proj_minus;
  // `<q_Cz q_Tz>`
  double zz_product;
} QdFoliation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the next call.
const char *qd_last_error(void);

// Parses circuit text (NUL-terminated UTF-8).
//
// # Safety
// `text` must be a valid C string; `out` must be writable.
enum QdStatus qd_circuit_parse(const char *text, struct QdCircuit **out);

// The built-in eight-qubit Frauchiger-Renner network.
//
// # Safety
// `out` must be writable.
enum QdStatus qd_circuit_preset_fr(struct QdCircuit **out);

// # Safety
// `circuit` must come from this library and not be used afterwards. NULL is ignored.
void qd_circuit_free(struct QdCircuit *circuit);

// # Safety
// Pointers must be valid.
enum QdStatus qd_circuit_n_qubits(const struct QdCircuit *circuit, size_t *out);

// Propagates descriptors through every slot.
//
// # Safety
// Pointers must be valid.
enum QdStatus qd_run(const struct QdCircuit *circuit, struct QdTrace **out);

// # Safety
// `trace` must come from [`qd_run`] and not be used afterwards. NULL is ignored.
void qd_trace_free(struct QdTrace *trace);

// Number of slot boundaries (`t = 0 .. n-1`).
//
// # Safety
// Pointers must be valid.
enum QdStatus qd_trace_n_times(const struct QdTrace *trace, size_t *out);

// `<q_{qubit,component}>` at boundary `time`; component 0 = x, 1 = y, 2 = z.
//
// # Safety
// Pointers must be valid.
enum QdStatus qd_expectation(const struct QdTrace *trace,
                             size_t time,
                             size_t qubit,
                             uint32_t component_index,
                             double *out);

// `<P_sign[q_z]>` with `sign` = +1 or -1.
//
// # Safety
// Pointers must be valid.
enum QdStatus qd_projector(const struct QdTrace *trace,
                           size_t time,
                           size_t qubit,
                           int32_t sign_value,
                           double *out);

// # Safety
// Pointers must be valid.
enum QdStatus qd_foliation(const struct QdTrace *trace,
                           size_t time,
                           size_t control,
                           size_t target,
                           double tolerance,
                           struct QdFoliation *out);

// `<q_{target,component}>` conditioned on the control's `sign` branch.
// Fails with `ZeroWeight` when that branch has no weight.
//
// # Safety
// Pointers must be valid.
enum QdStatus qd_conditional(const struct QdTrace *trace,
                             size_t time,
                             size_t target,
                             uint32_t component_index,
                             size_t control,
                             int32_t sign_value,
                             double tolerance,
                             double *out);

// Trace as JSON. Release with [`qd_string_free`].
//
// # Safety
// Pointers must be valid.
enum QdStatus qd_trace_to_json(const struct QdTrace *trace, char **out);

// Per-gate summary table. Release with [`qd_string_free`].
//
// # Safety
// Pointers must be valid.
enum QdStatus qd_report_table(const struct QdTrace *trace, double tolerance, char **out);

// Branching tree over every interacting pair, as Graphviz DOT.
//
// # Safety
// Pointers must be valid.
enum QdStatus qd_tree_dot(const struct QdTrace *trace, double tolerance, char **out);

// Branching tree over every interacting pair, as JSON.
//
// # Safety
// Pointers must be valid.
enum QdStatus qd_tree_json(const struct QdTrace *trace, double tolerance, char **out);

// Largest engine-vs-dense-oracle deviations over the whole trace.
//
// # Safety
// Pointers must be valid.
enum QdStatus qd_cross_check(const struct QdTrace *trace,
                             size_t cap,
                             double *expectation_dev,
                             double *matrix_dev);

// # Safety
// `s` must come from this library and not be used afterwards. NULL is ignored.
void qd_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDESCRIPTOR_H */
