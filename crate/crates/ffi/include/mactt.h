#ifndef MACTT_H
#define MACTT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum MacttStatus {
  MACTT_STATUS_OK = 0,
  // A required pointer argument was null.
  MACTT_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  MACTT_STATUS_INVALID_UTF8 = 2,
  // Input text could not be parsed.
  MACTT_STATUS_PARSE = 3,
  // A named object or map does not exist, or the choice is ambiguous.
  MACTT_STATUS_NOT_FOUND = 4,
  // A dimension exceeds the truncation.
  MACTT_STATUS_TRUNCATION = 5,
  // The input is well formed but violates a structural rule.
  MACTT_STATUS_INVALID = 6,
  // The library panicked. This is a bug.
  MACTT_STATUS_PANIC = 7,
} MacttStatus;

// A parsed simplicial set document with its objects and maps.
typedef struct MacttDocument MacttDocument;

// A hereditarily finite set.
typedef struct MacttSet MacttSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and must not be used afterwards.
void mactt_string_free(char *s);

// Parses a set literal such as `{#0,{#1}}` or `#3`.
//
// # Safety
// `literal` must be a valid C string and `out` a valid pointer.
enum MacttStatus mactt_set_parse(const char *literal, struct MacttSet **out);

// The set with the given Ackermann code.
struct MacttSet *mactt_set_from_code(uint64_t code);

// # Safety
// `set` must be null or a handle from this library that is not used afterwards.
void mactt_set_free(struct MacttSet *set);

// Number of members, or 0 for null.
//
// # Safety
// `set` must be null or a live handle.
size_t mactt_set_cardinality(const struct MacttSet *set);

// Compares two sets in the canonical order: negative, zero or positive.
//
// # Safety
// Both arguments must be live handles.
int mactt_set_compare(const struct MacttSet *a, const struct MacttSet *b);

// Whether `x` is a member of `set`. False if either is null.
//
// # Safety
// Both arguments must be null or live handles.
bool mactt_set_contains(const struct MacttSet *set, const struct MacttSet *x);

// Canonical literal of `set`.
//
// # Safety
// `set` must be a live handle and `out` a valid pointer.
enum MacttStatus mactt_set_to_string(const struct MacttSet *set, char **out);

// Members `x` of `from` satisfying a bounded formula in the free variable `var`.
//
// # Safety
// String arguments must be valid C strings, `from` a live handle and `out` a valid pointer.
enum MacttStatus mactt_separation(const char *formula,
                                  const char *var,
                                  const struct MacttSet *from,
                                  struct MacttSet **out);

// Parses the text of a `.sset` document.
//
// # Safety
// `source` must be a valid C string and `out` a valid pointer.
enum MacttStatus mactt_document_parse(const char *source, struct MacttDocument **out);

// # Safety
// `doc` must be null or a handle from this library that is not used afterwards.
void mactt_document_free(struct MacttDocument *doc);

// Number of objects in the document, or 0 for null.
//
// # Safety
// `doc` must be null or a live handle.
size_t mactt_document_object_count(const struct MacttDocument *doc);

// Number of maps in the document, or 0 for null.
//
// # Safety
// `doc` must be null or a live handle.
size_t mactt_document_map_count(const struct MacttDocument *doc);

// Number of `n`-simplices of the named object.
//
// # Safety
// `doc` must be a live handle, `object` a valid C string and `out` a valid pointer.
enum MacttStatus mactt_document_simplex_count(const struct MacttDocument *doc,
                                              const char *object,
                                              size_t n,
                                              size_t *out);

// Checks the lifting property of a map against horns, or against boundaries
// when `acyclic` is set, in dimensions up to `nmax`.
//
// With a null `map_name` the document's only map is used, or the map from its
// only object to the point. When the check fails and `witness` is not null it
// receives a description of the first square without a lift; otherwise it
// receives null.
//
// # Safety
// `doc` must be a live handle, `map_name` null or a valid C string, `holds` a
// valid pointer and `witness` null or a valid pointer.
enum MacttStatus mactt_kan_check(const struct MacttDocument *doc,
                                 const char *map_name,
                                 bool acyclic,
                                 size_t nmax,
                                 bool *holds,
                                 char **witness);

// Runs the command line tool in-process.
//
// `argv` holds `argc` arguments without the program name. Standard output and
// standard error are returned as strings in `out` and `err`, which may be null
// to discard them, and the exit code in `code`.
//
// # Safety
// `argv` must point to `argc` valid C strings and `code` must be a valid pointer.
enum MacttStatus mactt_cli_run(size_t argc,
                               const char *const *argv,
                               char **out,
                               char **err,
                               int *code);

// Message of the last failed call on this thread, or null.
//
// The pointer stays valid until the next call into the library on the same thread.
const char *mactt_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MACTT_H */
