#ifndef GHOST_SLOPES_H
#define GHOST_SLOPES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_NULL_POINTER = 1,
  GS_STATUS_INVALID_ARGUMENT = 2,
  GS_STATUS_PARSE = 3,
  GS_STATUS_UTF8 = 4,
  GS_STATUS_PANIC = 5,
} GsStatus;

// A character `(p, c, k0)`.
typedef struct GsContext GsContext;

// An evaluation point, given by its distances to the ghost zeros.
typedef struct GsProfile GsProfile;

// A direct sum of s-parameters.
typedef struct GsSpec GsSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next library call on the same thread.
const char *gs_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void gs_string_free(char *s);

// # Safety
// `out` must be valid for writes.
enum GsStatus gs_context_new(int64_t p, int64_t c, int64_t k0, struct GsContext **out);

// # Safety
// `ctx` must be null or a live handle from [`gs_context_new`].
void gs_context_free(struct GsContext *ctx);

// Parses a spec such as `s:3x2+s:0` or `ab:2,3,split`.
//
// # Safety
// `ctx` must be a live context, `text` a nul-terminated string, `out` valid for writes.
enum GsStatus gs_spec_parse(const struct GsContext *ctx, const char *text, struct GsSpec **out);

// # Safety
// `spec` must be null or a live handle from [`gs_spec_parse`].
void gs_spec_free(struct GsSpec *spec);

// Parses `origin:t=<r>` or `k=<int>:t=<r>`.
//
// # Safety
// `ctx` must be a live context, `text` a nul-terminated string, `out` valid for writes.
enum GsStatus gs_profile_parse(const struct GsContext *ctx,
                               const char *text,
                               struct GsProfile **out);

// # Safety
// `profile` must be null or a live handle from [`gs_profile_parse`].
void gs_profile_free(struct GsProfile *profile);

// # Safety
// `out` must be valid for writes.
enum GsStatus gs_vp(int64_t p, int64_t n, uint32_t *out);

// # Safety
// `out` must be valid for writes.
enum GsStatus gs_dig(int64_t p, uint64_t m, uint64_t *out);

// `Σ v_p(m)` over `m1 < m ≤ m2`.
//
// # Safety
// `out` must be valid for writes.
enum GsStatus gs_vp_range_sum(int64_t p, uint64_t m1, uint64_t m2, uint64_t *out);

// Coefficient `g_n` as JSON `{"n":..,"factors":[{"k":..,"e":..},..]}`.
// Free the string with [`gs_string_free`].
//
// # Safety
// `spec` must be a live handle, `out` valid for writes.
enum GsStatus gs_ghost_coefficient_json(const struct GsSpec *spec,
                                        uint64_t n,
                                        bool dagger,
                                        char **out);

// Newton polygon of the series truncated at `n`, as JSON.
// Free the string with [`gs_string_free`].
//
// # Safety
// `spec` and `profile` must be live handles, `out` valid for writes.
enum GsStatus gs_newton_polygon_json(const struct GsSpec *spec,
                                     const struct GsProfile *profile,
                                     uint64_t n,
                                     bool dagger,
                                     char **out);

// Compares the polygon of the sum of `specs` with the merge of their polygons.
// Writes whether they agree, the first differing `x` (0 when equal), and the
// compared range.
//
// # Safety
// `specs` must point to `count` live spec handles; `profile` must be live;
// the out pointers must be valid for writes.
enum GsStatus gs_direct_sum_compare(const struct GsSpec *const *specs,
                                    size_t count,
                                    const struct GsProfile *profile,
                                    uint64_t n,
                                    bool dagger,
                                    bool *out_equal,
                                    uint64_t *out_at,
                                    uint64_t *out_confirmed);

// Zigzag inequalities for the tuple `s[0..len]`. On failure `out_n` is the
// failing index; on success it is the checked range.
//
// # Safety
// `ctx` and `profile` must be live; `s` must point to `len` integers;
// the out pointers must be valid for writes.
enum GsStatus gs_zigzag_check(const struct GsContext *ctx,
                              const int64_t *s,
                              size_t len,
                              const struct GsProfile *profile,
                              uint64_t n,
                              bool *out_holds,
                              uint64_t *out_n);

// Whether every pair in `s[0..len]` is equal or companion, and whether all
// entries are generic.
//
// # Safety
// `ctx` must be live; `s` must point to `len` integers; the out pointers
// must be valid for writes.
enum GsStatus gs_theorem_condition(const struct GsContext *ctx,
                                   const int64_t *s,
                                   size_t len,
                                   bool *out_holds,
                                   bool *out_all_generic);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GHOST_SLOPES_H */
