// C boundary: wraps the C++ core in exception-free entry points with
// status codes and caller-owned handles.
#include "mfcrowd/mfcrowd.h"

#include <cstdio>
#include <cstring>
#include <new>
#include <string>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/run.hpp"

struct mfc_config {
    mfc::RunConfig cfg;
};

struct mfc_run_result {
    mfc::RunResult result;
};

namespace {

void copy_message(char* errbuf, int errbuf_len, const char* msg) {
    if (errbuf == nullptr || errbuf_len <= 0)
        return;
    std::snprintf(errbuf, static_cast<size_t>(errbuf_len), "%s", msg);
}

template <typename Fn>
mfc_status guarded(char* errbuf, int errbuf_len, Fn&& fn) {
    try {
        fn();
        return MFC_OK;
    } catch (const mfc::ParseError& e) {
        copy_message(errbuf, errbuf_len, e.what());
        return MFC_ERR_PARSE;
    } catch (const mfc::IoError& e) {
        copy_message(errbuf, errbuf_len, e.what());
        return MFC_ERR_IO;
    } catch (const mfc::CflError& e) {
        copy_message(errbuf, errbuf_len, e.what());
        return MFC_ERR_CFL;
    } catch (const mfc::NumericError& e) {
        copy_message(errbuf, errbuf_len, e.what());
        return MFC_ERR_NUMERIC;
    } catch (const mfc::InvalidArgument& e) {
        copy_message(errbuf, errbuf_len, e.what());
        return MFC_ERR_INVALID;
    } catch (const std::exception& e) {
        copy_message(errbuf, errbuf_len, e.what());
        return MFC_ERR_INTERNAL;
    } catch (...) {
        copy_message(errbuf, errbuf_len, "unknown failure");
        return MFC_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* mfc_version(void) { return "1.0.0"; }

mfc_status mfc_config_load(const char* path, mfc_config** out,
                           char* errbuf, int errbuf_len) {
    *out = nullptr;
    if (path == nullptr) {
        copy_message(errbuf, errbuf_len, "path is NULL");
        return MFC_ERR_INVALID;
    }
    return guarded(errbuf, errbuf_len, [&] {
        auto handle = new mfc_config{mfc::load_config(path)};
        *out = handle;
    });
}

mfc_status mfc_config_set(mfc_config* config, const char* key, const char* value,
                          char* errbuf, int errbuf_len) {
    if (key == nullptr || value == nullptr) {
        copy_message(errbuf, errbuf_len, "key or value is NULL");
        return MFC_ERR_INVALID;
    }
    return guarded(errbuf, errbuf_len,
                   [&] { mfc::config_set(config->cfg, key, value); });
}

void mfc_config_free(mfc_config* config) { delete config; }

mfc_status mfc_run(const mfc_config* config, mfc_run_result** out,
                   char* errbuf, int errbuf_len) {
    *out = nullptr;
    return guarded(errbuf, errbuf_len, [&] {
        auto handle = new mfc_run_result{mfc::run(config->cfg)};
        *out = handle;
    });
}

int mfc_run_converged(const mfc_run_result* result) {
    return result->result.converged ? 1 : 0;
}

int mfc_run_iterations(const mfc_run_result* result) {
    return result->result.iterations;
}

double mfc_run_final_residual(const mfc_run_result* result) {
    return result->result.final_residual;
}

const char* mfc_run_output_dir(const mfc_run_result* result) {
    return result->result.output_dir.c_str();
}

void mfc_run_result_free(mfc_run_result* result) { delete result; }

mfc_status mfc_check_uniqueness(const mfc_config* config, char** report_out,
                                char* errbuf, int errbuf_len) {
    *report_out = nullptr;
    return guarded(errbuf, errbuf_len, [&] {
        const std::string report = mfc::check_uniqueness_report(config->cfg);
        char* owned = new char[report.size() + 1];
        std::memcpy(owned, report.c_str(), report.size() + 1);
        *report_out = owned;
    });
}

void mfc_string_free(char* s) { delete[] s; }

}  // extern "C"
