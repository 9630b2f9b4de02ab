#ifndef SMOOTHWORDS_H
#define SMOOTHWORDS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SwStatus {
  SW_STATUS_OK = 0,
  SW_STATUS_NULL_POINTER = 1,
  SW_STATUS_INVALID_ALPHABET = 2,
  SW_STATUS_INVALID_LETTER = 3,
  SW_STATUS_PARSE_ERROR = 4,
  SW_STATUS_NOT_DIFFERENTIABLE = 5,
  SW_STATUS_NOT_SMOOTH = 6,
  SW_STATUS_EMPTY_WORD = 7,
  SW_STATUS_RESOURCE_LIMIT = 8,
  SW_STATUS_INVALID_ARGUMENT = 9,
  SW_STATUS_BUFFER_TOO_SMALL = 10,
  SW_STATUS_INTERNAL = 11,
  SW_STATUS_PANIC = 12,
} SwStatus;

/**
 * Opaque word handle.
 */
typedef struct SwWord SwWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of a status code.
 */
const char *sw_status_message(enum SwStatus status);

/**
 * Library version, NUL-terminated.
 */
const char *sw_version(void);

/**
 * Builds a word from `len` letters. `letters` may be null when `len` is 0.
 *
 * # Safety
 * `letters` must point to `len` readable `u32`s; `out` must be writable.
 */
enum SwStatus sw_word_new(uint32_t a,
                          uint32_t b,
                          const uint32_t *letters,
                          size_t len,
                          struct SwWord **out);

/**
 * Parses a word from digit (`"2211"`) or comma (`"2,2,1,1"`) text.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SwStatus sw_word_parse(uint32_t a, uint32_t b, const char *text, struct SwWord **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `w` must come from this library and not be freed twice.
 */
void sw_word_free(struct SwWord *w);

/**
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_word_len(const struct SwWord *w, size_t *out);

/**
 * Copies the letters into `buf`. `out_len` always receives the word length; when `cap` is
 * smaller the call fails with `SW_STATUS_BUFFER_TOO_SMALL` and `buf` is untouched.
 *
 * # Safety
 * `buf` must have room for `cap` `u32`s (may be null when `cap` is 0); `out_len` must be writable.
 */
enum SwStatus sw_word_letters(const struct SwWord *w, uint32_t *buf, size_t cap, size_t *out_len);

/**
 * `D(w)`.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_derivative(const struct SwWord *w, struct SwWord **out);

/**
 * Closure of `w`.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_closure(const struct SwWord *w, struct SwWord **out);

/**
 * `rho(w) = D(closure(w))`.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_rho(const struct SwWord *w, struct SwWord **out);

/**
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_is_smooth(const struct SwWord *w, bool *out);

/**
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_height(const struct SwWord *w, uint32_t *out);

/**
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SwStatus sw_is_lfe(const struct SwWord *w, bool *out);

/**
 * Number of smooth words of length `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SwStatus sw_gamma(uint32_t a, uint32_t b, size_t n, uint64_t *out);

/**
 * Size of level `j` of the LFE expansion tree.
 *
 * # Safety
 * `out` must be writable.
 */
enum SwStatus sw_p_level_count(uint32_t a,
                               uint32_t b,
                               uint32_t j,
                               uint64_t max_states,
                               uint64_t *out);

/**
 * First `n` letters of the self-run-length-encoding sequence starting with `first`, as a word.
 *
 * # Safety
 * `out` must be writable.
 */
enum SwStatus sw_kolakoski(uint32_t a, uint32_t b, uint32_t first, size_t n, struct SwWord **out);

/**
 * Writes `w` as text into `buf` with a terminating NUL. `out_len` receives the text length
 * without the NUL; when `cap` is too small the call fails with `SW_STATUS_BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `buf` must have room for `cap` bytes (may be null when `cap` is 0); `out_len` must be writable.
 */
enum SwStatus sw_word_text(const struct SwWord *w, char *buf, size_t cap, size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SMOOTHWORDS_H */
