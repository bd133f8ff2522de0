/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef STEINMANN_H
#define STEINMANN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a fallible call.
typedef enum StmStatus {
  STM_STATUS_OK = 0,
  // A required pointer argument was null.
  STM_STATUS_NULL_POINTER = 1,
  STM_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON, unknown label or basis name, unreadable file.
  STM_STATUS_PARSE = 3,
  // A mathematical precondition failed.
  STM_STATUS_DOMAIN = 4,
  // The ground set is larger than the context allows.
  STM_STATUS_RESOURCE_LIMIT = 5,
  STM_STATUS_NOT_STEINMANN = 6,
  // An internal error; the library state is still usable.
  STM_STATUS_PANIC = 7,
} StmStatus;

// The chambers of the adjoint braid arrangement on `{1, …, n}`.
typedef struct StmArrangement StmArrangement;

// Shared caches for adjoint arrangements and Steinmann relations.
typedef struct StmContext StmContext;

// An element of `Σ` or `Σ*` in one of the bases `M P C H Q`.
typedef struct StmElement StmElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the library, a static string.
const char *stm_version(void);

// Message of the last failed call on this thread, or null after a success.
// Valid until the next call into the library from this thread.
const char *stm_last_error(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void stm_string_free(char *s);

// Creates a context. `cache_dir` may be null for no on-disk cache. `max_n`
// bounds the adjoint computations and is clamped to the hard limit.
//
// # Safety
// `cache_dir` is null or a valid C string; `out` is writable.
enum StmStatus stm_context_new(const char *cache_dir, size_t max_n, struct StmContext **out);

// # Safety
// `ctx` is null or a live context.
void stm_context_free(struct StmContext *ctx);

// Number of chambers of the adjoint braid arrangement on `n` labels.
//
// # Safety
// `ctx` is a live context; `out` is writable.
enum StmStatus stm_chamber_count(const struct StmContext *ctx, size_t n, size_t *out);

// The arrangement on `{1, …, n}`, computed or loaded through the context.
//
// # Safety
// `ctx` is a live context; `out` is writable.
enum StmStatus stm_arrangement_new(const struct StmContext *ctx,
                                   size_t n,
                                   struct StmArrangement **out);

// # Safety
// `arr` is null or a live arrangement.
void stm_arrangement_free(struct StmArrangement *arr);

// Number of chambers; 0 for a null handle.
//
// # Safety
// `arr` is null or a live arrangement.
size_t stm_arrangement_len(const struct StmArrangement *arr);

// Sign string of chamber `id`, one `+` or `-` per hyperplane.
//
// # Safety
// `arr` is a live arrangement; `out` is writable.
enum StmStatus stm_arrangement_signs(const struct StmArrangement *arr, size_t id, char **out);

// Index of the chamber with the given sign string.
//
// # Safety
// `arr` is a live arrangement; `signs` a valid C string; `out` writable.
enum StmStatus stm_arrangement_find(const struct StmArrangement *arr,
                                    const char *signs,
                                    size_t *out);

// Ground, hyperplanes and chambers as JSON.
//
// # Safety
// `arr` is a live arrangement; `out` is writable.
enum StmStatus stm_arrangement_json(const struct StmArrangement *arr, char **out);

// Number of Steinmann relations of the arrangement.
//
// # Safety
// `ctx` and `arr` are live handles; `out` is writable.
enum StmStatus stm_relation_count(const struct StmContext *ctx,
                                  const struct StmArrangement *arr,
                                  size_t *out);

// The Eulerian chamber combination as a functional in JSON.
//
// # Safety
// `arr` is a live arrangement; `out` is writable.
enum StmStatus stm_eulerian_json(const struct StmArrangement *arr, char **out);

// The Dynkin element of chamber `id`, in the `H` basis.
//
// # Safety
// `arr` is a live arrangement; `out` is writable.
enum StmStatus stm_dynkin(const struct StmArrangement *arr, size_t id, struct StmElement **out);

// Parses an element `{"ground", "basis", "terms"}`. Labels name the ground.
//
// # Safety
// `text_json` is a valid C string; `out` is writable.
enum StmStatus stm_element_from_json(const char *text_json, struct StmElement **out);

// # Safety
// `e` is null or a live element.
void stm_element_free(struct StmElement *e);

// # Safety
// `e` is a live element; `out` is writable.
enum StmStatus stm_element_json(const struct StmElement *e, char **out);

// Number of nonzero terms; 0 for a null handle.
//
// # Safety
// `e` is null or a live element.
size_t stm_element_len(const struct StmElement *e);

// Rewrites `e` in `basis` (`"M"`, `"P"`, `"C"`, `"H"` or `"Q"`).
//
// # Safety
// `e` is a live element; `basis` a valid C string; `out` writable.
enum StmStatus stm_element_change_basis(const struct StmElement *e,
                                        const char *basis,
                                        struct StmElement **out);

// # Safety
// `e` is a live element; `out` is writable.
enum StmStatus stm_element_antipode(const struct StmElement *e, struct StmElement **out);

// Product of two elements on disjoint label sets.
//
// # Safety
// `a` and `b` are live elements; `out` is writable.
enum StmStatus stm_element_multiply(const struct StmElement *a,
                                    const struct StmElement *b,
                                    struct StmElement **out);

// Coproduct at the labels listed in `split_json` (a JSON array), as JSON.
//
// # Safety
// `e` is a live element; `split_json` a valid C string; `out` writable.
enum StmStatus stm_element_comultiply_json(const struct StmElement *e,
                                           const char *split_json,
                                           char **out);

// `⟨a, x⟩` for `a` in `Σ*` and `x` in `Σ`, as a rational string `"p/q"`.
//
// # Safety
// `a` and `x` are live elements; `out` is writable.
enum StmStatus stm_element_pairing(const struct StmElement *a,
                                   const struct StmElement *x,
                                   char **out);

// Runs a `steinmann` command line. `argv` holds `argc` arguments without the
// program name. Standard output and standard error of the command are
// returned in `out` and `err` (either may be null to discard). Returns the
// command's exit code, or -1 if `argv` is unusable.
//
// # Safety
// `argv` points to `argc` valid C strings; `out` and `err` are null or
// writable.
int stm_run(size_t argc, const char *const *argv, char **out, char **err);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* STEINMANN_H */
