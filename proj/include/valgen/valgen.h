#ifndef VALGEN_H
#define VALGEN_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define VG_API __attribute__((visibility("default")))
#else
#define VG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct vg_extension vg_extension;

typedef enum vg_status {
    VG_OK = 0,
    VG_E_ARGUMENT = 1,
    VG_E_SPEC = 2,
    VG_E_INTEGRITY = 3,
    VG_E_NOT_APPLICABLE = 4,
    VG_E_UNSUPPORTED = 5,
    VG_E_INTERNAL = 6
} vg_status;

/* Load an extension spec from JSON text or a file. */
VG_API vg_status vg_extension_load(const char* json, vg_extension** out);
VG_API vg_status vg_extension_load_file(const char* path, vg_extension** out);
VG_API void vg_extension_free(vg_extension* ext);

/* Reports are JSON strings owned by the caller; release with vg_string_free. */
VG_API vg_status vg_analyze(const vg_extension* ext, int depth, char** out_json);
VG_API vg_status vg_generators(const vg_extension* ext, int depth, uint64_t samples, uint64_t seed, char** out_json);
VG_API vg_status vg_expand(const vg_extension* ext, int depth, uint64_t samples, uint64_t seed, char** out_json);

/* nu(f) for f given by coefficient strings, lowest degree first; result is a JSON value. */
VG_API vg_status vg_nu_eval(const vg_extension* ext, const char* const* coeffs, size_t count, char** out_value);

VG_API vg_status vg_selftest(char** out_json);

VG_API void vg_string_free(char* s);

/* Message of the last failed call on this thread, "" if none. */
VG_API const char* vg_last_error(void);
VG_API const char* vg_version(void);

#ifdef __cplusplus
}
#endif

#endif
