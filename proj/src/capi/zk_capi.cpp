#include "zk.h"

#include <cstring>
#include <new>
#include <string>

#include "../core/equivariant.hpp"
#include "../core/error.hpp"
#include "../core/io.hpp"
#include "../core/simplicial.hpp"

namespace {

thread_local std::string g_last_error = "no error";

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

zk_status fail(zk_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename F>
zk_status guarded(F&& f) {
    try {
        f();
        return ZK_OK;
    } catch (const zk::Error& e) {
        return fail(static_cast<zk_status>(static_cast<int>(e.code())), e.what());
    } catch (const std::bad_alloc&) {
        return fail(ZK_ERROR_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return fail(ZK_ERROR_INTERNAL, e.what());
    }
}

int effective_truncation(const zk::SimplicialComplex& k, int max_degree) {
    return max_degree < 0 ? zk::default_truncation(k) : max_degree;
}

}  // namespace

struct zk_complex {
    zk::SimplicialComplex k;
};

extern "C" {

const char* zk_version(void) { return "0.1.0"; }

const char* zk_last_error(void) { return g_last_error.c_str(); }

zk_status zk_complex_from_text(const char* text, zk_complex** out) {
    if (!text || !out) return fail(ZK_ERROR_INPUT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new zk_complex{zk::io::parse_complex_text(text)}; });
}

zk_status zk_complex_from_json(const char* json, zk_complex** out) {
    if (!json || !out) return fail(ZK_ERROR_INPUT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new zk_complex{zk::io::parse_complex_json(json)}; });
}

void zk_complex_free(zk_complex* k) { delete k; }

zk_status zk_complex_to_json(const zk_complex* k, char** json_out) {
    if (!k || !json_out) return fail(ZK_ERROR_INPUT, "null argument");
    return guarded([&] { *json_out = dup_string(zk::io::complex_to_json(k->k).dump(2)); });
}

zk_status zk_cohomology(const zk_complex* k, const char* torus, int max_degree,
                        int with_multidegree, int rational, char** json_out) {
    if (!k || !torus || !json_out) return fail(ZK_ERROR_INPUT, "null argument");
    return guarded([&] {
        zk::TorusSubset i = zk::io::parse_torus(k->k, torus);
        zk::EquivariantCohomology e(k->k, i, effective_truncation(k->k, max_degree));
        *json_out = dup_string(
            zk::io::cohomology_report(e, with_multidegree != 0, rational != 0).dump(2));
    });
}

zk_status zk_formality(const zk_complex* k, const char* torus, int max_degree,
                       char** json_out) {
    if (!k || !torus || !json_out) return fail(ZK_ERROR_INPUT, "null argument");
    return guarded([&] {
        zk::TorusSubset i = zk::io::parse_torus(k->k, torus);
        int d = effective_truncation(k->k, max_degree);
        zk::FreenessVerdict v = zk::freeness_verdict(k->k, i, d);
        *json_out = dup_string(zk::io::formality_report(k->k, i, v, d).dump(2));
    });
}

zk_status zk_formality_survey(const zk_complex* k, int max_degree, int threads,
                              char** json_out) {
    if (!k || !json_out) return fail(ZK_ERROR_INPUT, "null argument");
    return guarded([&] {
        int d = effective_truncation(k->k, max_degree);
        zk::SurveyResult survey = zk::formality_survey(k->k, d, threads <= 0 ? 1 : threads);
        *json_out = dup_string(zk::io::survey_report(k->k, survey, d).dump(2));
    });
}

zk_status zk_classify(const zk_complex* k, char** json_out) {
    if (!k || !json_out) return fail(ZK_ERROR_INPUT, "null argument");
    return guarded([&] { *json_out = dup_string(zk::io::classify_report(k->k).dump(2)); });
}

void zk_string_free(char* s) { delete[] s; }

}  // extern "C"
