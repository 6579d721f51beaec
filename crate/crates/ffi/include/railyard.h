/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef RAILYARD_H
#define RAILYARD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RyStatus {
  RY_STATUS_OK = 0,
  RY_STATUS_NULL_POINTER = 1,
  RY_STATUS_INVALID_UTF8 = 2,
  RY_STATUS_PARSE_ERROR = 3,
  RY_STATUS_TARGET_TOO_SMALL = 4,
  RY_STATUS_ILL_FORMED = 5,
  RY_STATUS_INVALID_ARGUMENT = 6,
  RY_STATUS_EMPTY_LANGUAGE = 7,
  RY_STATUS_PANIC = 99,
} RyStatus;

/**
 * A parsed diagram.
 */
typedef struct RyDiagram RyDiagram;

/**
 * A top-level well-formed layout.
 */
typedef struct RyLayout RyLayout;

/**
 * Layout parameters; starts from the defaults.
 */
typedef struct RyParams RyParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses the s-expression diagram syntax.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RyStatus ry_diagram_parse(const char *text_ptr, struct RyDiagram **out);

/**
 * Parses a regular expression and translates it to a diagram.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RyStatus ry_regex_parse(const char *text_ptr, struct RyDiagram **out);

/**
 * Prints a diagram in its s-expression syntax.
 *
 * # Safety
 * `d` must come from this library and `out` must be a valid pointer.
 */
enum RyStatus ry_diagram_to_sexpr(const struct RyDiagram *d, char **out);

/**
 * # Safety
 * `d` must be null or a handle from this library not yet freed.
 */
void ry_diagram_free(struct RyDiagram *d);

struct RyParams *ry_params_new(void);

/**
 * # Safety
 * `p` must be null or a handle from this library not yet freed.
 */
void ry_params_free(struct RyParams *p);

/**
 * # Safety
 * `p` must be a live params handle.
 */
enum RyStatus ry_params_set_width(struct RyParams *p, double width);

/**
 * # Safety
 * `p` must be a live params handle.
 */
enum RyStatus ry_params_set_gap(struct RyParams *p, double gap);

/**
 * # Safety
 * `p` must be a live params handle.
 */
enum RyStatus ry_params_set_flex_absorb(struct RyParams *p, double flex_absorb);

/**
 * `"local"` or `"global"`.
 *
 * # Safety
 * `p` must be a live params handle and `mode` a NUL-terminated string.
 */
enum RyStatus ry_params_set_wrap(struct RyParams *p, const char *mode);

/**
 * `"top"`, `"center"`, `"bottom"` or `"baseline"`.
 *
 * # Safety
 * `p` must be a live params handle and `policy` a NUL-terminated string.
 */
enum RyStatus ry_params_set_align(struct RyParams *p, const char *policy);

/**
 * `"start"`, `"end"`, `"center"`, `"space-between"`, `"space-around"` or `"space-evenly"`.
 *
 * # Safety
 * `p` must be a live params handle and `policy` a NUL-terminated string.
 */
enum RyStatus ry_params_set_justify(struct RyParams *p, const char *policy);

/**
 * Narrowest target width the diagram can be compiled at.
 *
 * # Safety
 * Handles must be live; `out` must be a valid pointer.
 */
enum RyStatus ry_min_content(const struct RyDiagram *d, const struct RyParams *p, double *out);

/**
 * Compiles a diagram at the params' target width.
 *
 * # Safety
 * Handles must be live; `out` must be a valid pointer.
 */
enum RyStatus ry_compile(const struct RyDiagram *d,
                         const struct RyParams *p,
                         struct RyLayout **out);

/**
 * Parses a layout s-expression; fails with `RY_STATUS_ILL_FORMED` unless it is top-level well-formed.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RyStatus ry_layout_parse(const char *text_ptr,
                              struct RyLayout **out);

/**
 * # Safety
 * `l` must be null or a handle from this library not yet freed.
 */
void ry_layout_free(struct RyLayout *l);

/**
 * # Safety
 * `l` must be live; `out` must be a valid pointer.
 */
enum RyStatus ry_layout_width(const struct RyLayout *l, double *out);

/**
 * # Safety
 * `l` must be live; `out` must be a valid pointer. Free the result with `ry_string_free`.
 */
enum RyStatus ry_layout_render_svg(const struct RyLayout *l, char **out);

/**
 * # Safety
 * `l` must be live; `out` must be a valid pointer. Free the result with `ry_string_free`.
 */
enum RyStatus ry_layout_to_sexpr(const struct RyLayout *l, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void ry_string_free(char *s);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next library call on the same thread.
 */
const char *ry_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAILYARD_H */
