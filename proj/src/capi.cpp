#include "valgen/valgen.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "report.hpp"
#include "valgen/error.hpp"

struct vg_extension {
    valgen::LoadedSpec spec;
};

namespace {

thread_local std::string last_error;

vg_status status_of(valgen::ErrorKind k) {
    using valgen::ErrorKind;
    switch (k) {
    case ErrorKind::Spec: return VG_E_SPEC;
    case ErrorKind::Argument:
    case ErrorKind::FieldMismatch:
    case ErrorKind::Structural: return VG_E_ARGUMENT;
    case ErrorKind::NotApplicable: return VG_E_NOT_APPLICABLE;
    case ErrorKind::Unsupported:
    case ErrorKind::ValueNotRepresented: return VG_E_UNSUPPORTED;
    default: return VG_E_INTEGRITY;
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
vg_status guarded(F&& body) {
    last_error.clear();
    try {
        body();
        return VG_OK;
    } catch (const valgen::Error& e) {
        last_error = std::string(valgen::to_string(e.kind())) + ": " + e.what();
        return status_of(e.kind());
    } catch (const std::exception& e) {
        last_error = std::string("internal: ") + e.what();
        return VG_E_INTERNAL;
    } catch (...) {
        last_error = "internal: unknown exception";
        return VG_E_INTERNAL;
    }
}

vg_status bad_argument(const char* what) {
    last_error = std::string("argument: ") + what;
    return VG_E_ARGUMENT;
}

}  // namespace

extern "C" {

vg_status vg_extension_load(const char* json, vg_extension** out) {
    if (!json || !out) return bad_argument("null pointer");
    *out = nullptr;
    return guarded([&] { *out = new vg_extension{valgen::load_spec(json)}; });
}

vg_status vg_extension_load_file(const char* path, vg_extension** out) {
    if (!path || !out) return bad_argument("null pointer");
    *out = nullptr;
    std::ifstream in(path);
    if (!in) {
        last_error = std::string("spec: cannot open ") + path;
        return VG_E_SPEC;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    return vg_extension_load(text.c_str(), out);
}

void vg_extension_free(vg_extension* ext) { delete ext; }

vg_status vg_analyze(const vg_extension* ext, int depth, char** out_json) {
    if (!ext || !out_json) return bad_argument("null pointer");
    *out_json = nullptr;
    return guarded([&] { *out_json = dup(valgen::analyze_report(*ext->spec.ext, depth).dump(2)); });
}

vg_status vg_generators(const vg_extension* ext, int depth, uint64_t samples, uint64_t seed, char** out_json) {
    if (!ext || !out_json) return bad_argument("null pointer");
    *out_json = nullptr;
    return guarded([&] { *out_json = dup(valgen::generators_report(ext->spec, depth, samples, seed).dump(2)); });
}

vg_status vg_expand(const vg_extension* ext, int depth, uint64_t samples, uint64_t seed, char** out_json) {
    if (!ext || !out_json) return bad_argument("null pointer");
    *out_json = nullptr;
    return guarded([&] { *out_json = dup(valgen::expand_report(ext->spec, depth, samples, seed).dump(2)); });
}

vg_status vg_nu_eval(const vg_extension* ext, const char* const* coeffs, size_t count, char** out_value) {
    if (!ext || !out_value || (count && !coeffs)) return bad_argument("null pointer");
    *out_value = nullptr;
    return guarded([&] {
        std::vector<std::string> cs;
        for (size_t i = 0; i < count; ++i) {
            if (!coeffs[i]) valgen::fail(valgen::ErrorKind::Argument, "null coefficient");
            cs.emplace_back(coeffs[i]);
        }
        const auto& e = *ext->spec.ext;
        *out_value = dup(valgen::to_json(valgen::nu_eval(e, valgen::parse_poly(e.base(), cs))).dump());
    });
}

vg_status vg_selftest(char** out_json) {
    if (!out_json) return bad_argument("null pointer");
    *out_json = nullptr;
    return guarded([&] { *out_json = dup(valgen::selftest_report().dump(2)); });
}

void vg_string_free(char* s) { std::free(s); }

const char* vg_last_error(void) { return last_error.c_str(); }

const char* vg_version(void) { return "0.1.0"; }
}
