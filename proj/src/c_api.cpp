#include "sscs/sscs.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "sscs/dims.hpp"
#include "sscs/graph.hpp"
#include "sscs/report.hpp"
#include "sscs/symcm.hpp"

struct sscs_graph {
    sscs::StructuredGraph graph;
};

namespace {

thread_local std::string last_error;

sscs_status fail(sscs_status status, const std::string& message) {
    last_error = message;
    return status;
}

char* copy_out(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Maps library exceptions onto status codes.
template <class F>
sscs_status guarded(F&& body) {
    try {
        last_error.clear();
        return body();
    } catch (const nlohmann::json::exception& e) {
        return fail(SSCS_ERR_PARSE, e.what());
    } catch (const sscs::GraphError& e) {
        return fail(SSCS_ERR_INVALID, e.what());
    } catch (const sscs::PreconditionError& e) {
        return fail(SSCS_ERR_PRECONDITION, e.what());
    } catch (const sscs::UndecidedError& e) {
        return fail(SSCS_ERR_PRECONDITION, e.what());
    } catch (const std::logic_error& e) {
        return fail(SSCS_ERR_INTERNAL, e.what());
    } catch (const std::exception& e) {
        return fail(SSCS_ERR_INTERNAL, e.what());
    }
}

sscs::ZeroabilityMode to_mode(sscs_mode m) {
    return m == SSCS_MODE_PAPER ? sscs::ZeroabilityMode::PaperLiteral : sscs::ZeroabilityMode::ExactAlgebraic;
}

}  // namespace

extern "C" {

void sscs_analyze_options_init(sscs_analyze_options* options) {
    if (!options) return;
    options->mode = SSCS_MODE_BOTH;
    options->verify = 0;
    options->dump_symcm = 0;
    options->pretty = 0;
    options->seed = 0;
    options->budget = 4000;
}

sscs_status sscs_graph_parse(const char* json, size_t length, sscs_graph** out) {
    if (!json || !out) return fail(SSCS_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        last_error.clear();
        *out = new sscs_graph{sscs::parse_graph(std::string_view(json, length))};
        return SSCS_OK;
    } catch (const sscs::GraphError& e) {
        return fail(SSCS_ERR_PARSE, e.what());
    } catch (const std::exception& e) {
        return fail(SSCS_ERR_PARSE, e.what());
    }
}

void sscs_graph_free(sscs_graph* graph) { delete graph; }

const char* sscs_last_error(void) { return last_error.c_str(); }

sscs_status sscs_graph_shape(const sscs_graph* graph, sscs_shape_kind* kind, int* input_connected) {
    if (!graph || !kind || !input_connected) return fail(SSCS_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const sscs::GraphShape s = sscs::validate(graph->graph);
        *kind = s.kind == sscs::Acyclicity::Hdag  ? SSCS_SHAPE_HDAG
                : s.kind == sscs::Acyclicity::Dag ? SSCS_SHAPE_DAG
                                                  : SSCS_SHAPE_CYCLIC;
        *input_connected = s.input_connected ? 1 : 0;
        return SSCS_OK;
    });
}

sscs_status sscs_scs_dim(const sscs_graph* graph, size_t* dim) {
    if (!graph || !dim) return fail(SSCS_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *dim = sscs::scs_dim(graph->graph).size;
        return SSCS_OK;
    });
}

sscs_status sscs_sscs_dim(const sscs_graph* graph, sscs_mode mode, size_t* dim, long* k_first) {
    if (!graph || !dim || !k_first) return fail(SSCS_ERR_ARGUMENT, "null argument");
    if (mode != SSCS_MODE_PAPER && mode != SSCS_MODE_EXACT) return fail(SSCS_ERR_ARGUMENT, "mode must be paper or exact");
    return guarded([&] {
        const sscs::SscsResult r = sscs::sscs_dim(graph->graph, to_mode(mode));
        *dim = r.dim;
        *k_first = r.k_first ? static_cast<long>(*r.k_first) : -1;
        return SSCS_OK;
    });
}

sscs_status sscs_analyze(const sscs_graph* graph, const sscs_analyze_options* options, char** report,
                         int* self_consistent) {
    if (!graph || !report) return fail(SSCS_ERR_ARGUMENT, "null argument");
    *report = nullptr;
    sscs_analyze_options opts;
    sscs_analyze_options_init(&opts);
    if (options) opts = *options;
    if (opts.mode < SSCS_MODE_PAPER || opts.mode > SSCS_MODE_BOTH) return fail(SSCS_ERR_ARGUMENT, "unknown mode");
    return guarded([&] {
        sscs::AnalysisOptions o;
        o.paper = (opts.mode & SSCS_MODE_PAPER) != 0;
        o.exact = (opts.mode & SSCS_MODE_EXACT) != 0;
        o.verify = opts.verify != 0;
        o.dump_symcm = opts.dump_symcm != 0;
        o.seed = opts.seed;
        o.budget = opts.budget;
        const sscs::AnalysisReport r = sscs::analyze(graph->graph, o);
        if (self_consistent) *self_consistent = !r.verification || r.verification->passed ? 1 : 0;
        *report = copy_out(sscs::report_to_json(r, opts.pretty != 0));
        return *report ? SSCS_OK : fail(SSCS_ERR_INTERNAL, "out of memory");
    });
}

sscs_status sscs_export_dot(const sscs_graph* graph, int subgraph, sscs_mode mode, char** dot) {
    if (!graph || !dot) return fail(SSCS_ERR_ARGUMENT, "null argument");
    *dot = nullptr;
    return guarded([&] {
        *dot = copy_out(sscs::export_dot(graph->graph, subgraph != 0, to_mode(mode)));
        return *dot ? SSCS_OK : fail(SSCS_ERR_INTERNAL, "out of memory");
    });
}

sscs_status sscs_symcm_dump(const sscs_graph* graph, char** text) {
    if (!graph || !text) return fail(SSCS_ERR_ARGUMENT, "null argument");
    *text = nullptr;
    return guarded([&] {
        *text = copy_out(sscs::dump(sscs::build_symcm(graph->graph), graph->graph));
        return *text ? SSCS_OK : fail(SSCS_ERR_INTERNAL, "out of memory");
    });
}

void sscs_string_free(char* text) { std::free(text); }

const char* sscs_version(void) { return sscs::kVersion; }

}  // extern "C"
