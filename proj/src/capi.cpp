#include "dvslab/capi.h"

#include <memory>
#include <string>

#include "dvslab/experiment.hpp"

struct dvslab_result {
    dvslab::ResultDocument doc;
    std::string json;
};

namespace {

thread_local std::string g_last_error;

dvslab_status fail(dvslab_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

}  // namespace

extern "C" {

const char* dvslab_version(void) { return dvslab::kVersion; }

dvslab_status dvslab_run_spec(const char* spec_json, dvslab_result** out_result) {
    if (spec_json == nullptr || out_result == nullptr)
        return fail(DVSLAB_ERR_INVALID_ARGUMENT, "null argument");
    *out_result = nullptr;
    try {
        dvslab::ExperimentSpec spec = dvslab::parse_spec_json(spec_json);
        auto result = std::make_unique<dvslab_result>();
        result->doc = dvslab::run_spec(spec);
        result->json = dvslab::result_to_json(result->doc);
        *out_result = result.release();
        g_last_error.clear();
        return DVSLAB_OK;
    } catch (const dvslab::SpecParseError& err) {
        return fail(DVSLAB_ERR_PARSE, err.what());
    } catch (const dvslab::ConfigError& err) {
        return fail(DVSLAB_ERR_UNKNOWN_NAME, err.what());
    } catch (const std::invalid_argument& err) {
        return fail(DVSLAB_ERR_INVALID_ARGUMENT, err.what());
    } catch (const std::exception& err) {
        return fail(DVSLAB_ERR_INTERNAL, err.what());
    }
}

const char* dvslab_result_json(const dvslab_result* result) {
    return result == nullptr ? "" : result->json.c_str();
}

size_t dvslab_result_experiment_count(const dvslab_result* result) {
    return result == nullptr ? 0 : result->doc.experiments.size();
}

size_t dvslab_result_relation_count(const dvslab_result* result) {
    return result == nullptr ? 0 : result->doc.relations.size();
}

size_t dvslab_result_failed_relations(const dvslab_result* result) {
    return result == nullptr ? 0 : result->doc.failed_relations();
}

void dvslab_result_free(dvslab_result* result) { delete result; }

const char* dvslab_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
