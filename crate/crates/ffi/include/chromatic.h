#ifndef CHROMATIC_H
#define CHROMATIC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum ChromaticStatus {
  CHROMATIC_STATUS_OK = 0,
  CHROMATIC_STATUS_NULL_ARGUMENT = 1,
  CHROMATIC_STATUS_INVALID_UTF8 = 2,
  // Malformed picture text or JSON.
  CHROMATIC_STATUS_PARSE = 3,
  // The picture is valid but has no dual graph here.
  CHROMATIC_STATUS_MODEL = 4,
  // Polynomial input rejected or roots could not be separated.
  CHROMATIC_STATUS_ARITHMETIC = 5,
  // Frobenius data missing, undefined or inconsistent.
  CHROMATIC_STATUS_FROBENIUS = 6,
  // Internal failure; the message has details.
  CHROMATIC_STATUS_PANIC = 7,
} ChromaticStatus;

// A dual graph.
typedef struct ChromaticGraph ChromaticGraph;

// A chromatic cluster picture, with the arithmetic data when it was built
// from polynomials.
typedef struct ChromaticPicture ChromaticPicture;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null after a
// successful call. Owned by the library; valid until the next call.
const char *chromatic_last_error(void);

// Parses a picture from its text form, e.g. `(0 (2 r b) r r b b)`, or
// from JSON.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum ChromaticStatus chromatic_picture_parse(const char *text, struct ChromaticPicture **out);

// Builds the picture of a polynomial input (JSON). A nonzero `p`
// overrides the prime given in the JSON.
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum ChromaticStatus chromatic_picture_from_polynomials(const char *json,
                                                        uint64_t p,
                                                        struct ChromaticPicture **out);

// Canonical text form of the picture.
//
// # Safety
// `picture` must come from this library; `out` must be valid.
enum ChromaticStatus chromatic_picture_text(const struct ChromaticPicture *picture, char **out);

// Picture as JSON.
//
// # Safety
// `picture` must come from this library; `out` must be valid.
enum ChromaticStatus chromatic_picture_json(const struct ChromaticPicture *picture, char **out);

// Per-cluster classification table as JSON.
//
// # Safety
// `picture` must come from this library; `out` must be valid.
enum ChromaticStatus chromatic_picture_classification_json(const struct ChromaticPicture *picture,
                                                           char **out);

// Structural check report as JSON; the call succeeds even when checks fail.
//
// # Safety
// `picture` must come from this library; `out` must be valid.
enum ChromaticStatus chromatic_picture_check_json(const struct ChromaticPicture *picture,
                                                  char **out);

// Builds the dual graph of the picture.
//
// # Safety
// `picture` must come from this library; `out` must be valid.
enum ChromaticStatus chromatic_graph_build(const struct ChromaticPicture *picture,
                                           struct ChromaticGraph **out);

// Graph as JSON.
//
// # Safety
// `graph` must come from this library; `out` must be valid.
enum ChromaticStatus chromatic_graph_json(const struct ChromaticGraph *graph, char **out);

// Graph as DOT.
//
// # Safety
// `graph` must come from this library; `out` must be valid.
enum ChromaticStatus chromatic_graph_dot(const struct ChromaticGraph *graph, char **out);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `graph` must be null or come from this library.
size_t chromatic_graph_vertex_count(const struct ChromaticGraph *graph);

// Number of edges (chains and loops), or 0 for a null handle.
//
// # Safety
// `graph` must be null or come from this library.
size_t chromatic_graph_edge_count(const struct ChromaticGraph *graph);

// Sum of the vertex genera plus the first Betti number, or -1 for a null
// handle.
//
// # Safety
// `graph` must be null or come from this library.
int64_t chromatic_graph_arithmetic_genus(const struct ChromaticGraph *graph);

// Frobenius automorphism of the picture's dual graph as JSON. For a
// picture built from polynomials `eps_json` and `perm_json` must be null
// and the action is computed; otherwise they give the ε table and cluster
// permutation (null means all +1 and the identity).
//
// # Safety
// `picture` must come from this library; string arguments must be null or
// nul-terminated; `out` must be valid.
enum ChromaticStatus chromatic_frobenius_json(const struct ChromaticPicture *picture,
                                              const char *eps_json,
                                              const char *perm_json,
                                              char **out);

// Releases a picture handle. Null is ignored.
//
// # Safety
// `picture` must be null or come from this library, and not be used again.
void chromatic_picture_free(struct ChromaticPicture *picture);

// Releases a graph handle. Null is ignored.
//
// # Safety
// `graph` must be null or come from this library, and not be used again.
void chromatic_graph_free(struct ChromaticGraph *graph);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void chromatic_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CHROMATIC_H */
