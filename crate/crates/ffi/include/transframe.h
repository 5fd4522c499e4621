/* C interface to the transframe analysis library.
 * Generated by cbindgen; do not edit by hand. */

#ifndef TRANSFRAME_H
#define TRANSFRAME_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum TfStatus {
  /**
   * The call succeeded and the out-parameters are filled in.
   */
  TF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TF_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed input: bad UTF-8, unparsable JSON or formula text, an
   * unknown point name, a relation that is not transitive as claimed.
   */
  TF_STATUS_INVALID_INPUT = 2,
  /**
   * The operation needs a rooted frame and the argument has no root.
   */
  TF_STATUS_NOT_ROOTED = 3,
  /**
   * The work estimate exceeds the enumeration or search budget.
   */
  TF_STATUS_BUDGET_EXCEEDED = 4,
  /**
   * An internal invariant failed; please report the last-error message.
   */
  TF_STATUS_INTERNAL = 5,
} TfStatus;

/**
 * Formula family selector for [`tf_check_family`].
 */
typedef enum TfFamily {
  /**
   * Depth bound: valid iff every point has rank at most n.
   */
  TF_FAMILY_B = 0,
  /**
   * Width bound: valid in rooted frames iff the width is at most n.
   */
  TF_FAMILY_WID = 1,
  /**
   * Weak-width bound: valid in rooted frames iff the weak width at every
   * root is at most n.
   */
  TF_FAMILY_WID_PLUS = 2,
  /**
   * Irreflexive-antichain bound: valid in rooted frames iff every
   * irreflexive antichain has at most n points.
   */
  TF_FAMILY_WID_BULLET = 3,
} TfFamily;

/**
 * Opaque frame handle.
 */
typedef struct TfFrame TfFrame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next call into the library from the same thread; it is
 * never null (initially the empty string).
 */
const char *tf_last_error(void);

/**
 * Free a string returned through a `char**` out-parameter. Null is ignored.
 *
 * # Safety
 * `s` must be null or an unfreed string produced by this library.
 */
void tf_string_free(char *s);

/**
 * Free a frame handle. Null is ignored.
 *
 * # Safety
 * `frame` must be null or an unfreed handle produced by this library.
 */
void tf_frame_free(struct TfFrame *frame);

/**
 * Parse frame JSON (`{"points": [...], "edges": [[w,u], ...], "closed":
 * bool}`) into a handle. With `close` true the relation is closed
 * transitively; otherwise a relation claimed closed is validated and a
 * missing composite edge is an error.
 *
 * # Safety
 * `json` must be a valid C string; `out` a valid destination pointer.
 */
enum TfStatus tf_frame_from_json(const char *json, bool close, struct TfFrame **out);

/**
 * Serialize a frame back to JSON (always with `"closed": true`).
 *
 * # Safety
 * `frame` must be a valid handle; `out` a valid destination pointer.
 */
enum TfStatus tf_frame_to_json(const struct TfFrame *frame, char **out);

/**
 * Build the n-th member of the H family.
 *
 * # Safety
 * `out` must be a valid destination pointer.
 */
enum TfStatus tf_make_h(uint32_t n, struct TfFrame **out);

/**
 * Number of points.
 *
 * # Safety
 * `frame` must be a valid handle; `out` a valid destination pointer.
 */
enum TfStatus tf_frame_point_count(const struct TfFrame *frame, uint32_t *out);

/**
 * Rank: the longest strict-successor chain length over all points.
 *
 * # Safety
 * `frame` must be a valid handle; `out` a valid destination pointer.
 */
enum TfStatus tf_frame_rank(const struct TfFrame *frame, uint32_t *out);

/**
 * Width: the maximum antichain size (rooted or not).
 *
 * # Safety
 * `frame` must be a valid handle; `out` a valid destination pointer.
 */
enum TfStatus tf_frame_width(const struct TfFrame *frame, uint32_t *out);

/**
 * Size of the largest antichain of irreflexive points.
 *
 * # Safety
 * `frame` must be a valid handle; `out` a valid destination pointer.
 */
enum TfStatus tf_frame_irr_antichain_max(const struct TfFrame *frame, uint32_t *out);

/**
 * Weak width at the named point: the largest width among subframes
 * generated by its strict successors.
 *
 * # Safety
 * `frame` must be a valid handle; `point` a valid C string; `out` a valid
 * destination pointer.
 */
enum TfStatus tf_frame_weak_width_at(const struct TfFrame *frame, const char *point, uint32_t *out);

/**
 * Check validity of a formula given as text (grammar: variables, `bot`,
 * `~`/`not`, `&`, `|`, `->`, `[]`, `<>`, parentheses).
 *
 * # Safety
 * `frame` must be a valid handle; `formula` a valid C string; `out_valid` a
 * valid destination pointer.
 */
enum TfStatus tf_check_formula(const struct TfFrame *frame,
                               const char *formula,
                               uint64_t budget,
                               bool *out_valid);

/**
 * Check validity of the n-th member of a built-in formula family.
 *
 * # Safety
 * `frame` must be a valid handle; `out_valid` a valid destination pointer.
 */
enum TfStatus tf_check_family(const struct TfFrame *frame,
                              enum TfFamily family,
                              uint32_t n,
                              uint64_t budget,
                              bool *out_valid);

/**
 * Frame formula of a rooted frame under its canonical point ordering,
 * rendered as formula text.
 *
 * # Safety
 * `frame` must be a valid handle; `out` a valid destination pointer.
 */
enum TfStatus tf_frame_formula(const struct TfFrame *frame, char **out);

/**
 * Search for a reduction of `source` onto `target`. On success with a
 * reduction found, `*out_json` holds `{"map": {...}}` JSON; with none,
 * `*out_json` is null and the status is still `TF_STATUS_OK`.
 *
 * # Safety
 * `source` and `target` must be valid handles; `out_json` a valid
 * destination pointer.
 */
enum TfStatus tf_find_reduction(const struct TfFrame *source,
                                const struct TfFrame *target,
                                uint64_t budget,
                                char **out_json);

/**
 * Representing tree of a frame whose inverted cluster order is a tree,
 * as bracket text (e.g. `1(2, 0)`).
 *
 * # Safety
 * `frame` must be a valid handle; `out` a valid destination pointer.
 */
enum TfStatus tf_rt_text(const struct TfFrame *frame, char **out);

/**
 * Rooted representing tree of a rooted frame, as bracket text.
 *
 * # Safety
 * `frame` must be a valid handle; `out` a valid destination pointer.
 */
enum TfStatus tf_srt_text(const struct TfFrame *frame, char **out);

/**
 * Decide the embedding order between two trees given as bracket text:
 * does `a` embed into `b`?
 *
 * # Safety
 * `a` and `b` must be valid C strings; `out` a valid destination pointer.
 */
enum TfStatus tf_tree_embed(const char *a, const char *b, bool *out);

/**
 * Graphviz DOT rendering of a frame (clusters as boxes, covering edges).
 *
 * # Safety
 * `frame` must be a valid handle; `out` a valid destination pointer.
 */
enum TfStatus tf_frame_dot(const struct TfFrame *frame, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRANSFRAME_H */
