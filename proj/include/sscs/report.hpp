#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sscs/dims.hpp"
#include "sscs/graph.hpp"

namespace sscs {

inline constexpr const char* kVersion = "0.1.0";

/// Edge name ("u->v") to rational text, in edge declaration order.
using WitnessRecord = std::vector<std::pair<std::string, std::string>>;

struct LayeringRecord {
    std::size_t depth = 0;
    std::vector<std::vector<std::string>> layers;
    bool operator==(const LayeringRecord&) const = default;
};

struct ClassificationRecord {
    std::vector<std::pair<std::string, std::string>> roles;
    std::vector<std::pair<std::string, std::string>> anchors;
    std::vector<std::pair<std::string, std::vector<std::string>>> cond1;
    bool operator==(const ClassificationRecord&) const = default;
};

struct CoverRecord {
    std::size_t size = 0;
    std::vector<std::vector<std::string>> stems;
    std::vector<std::vector<std::string>> cycles;
    bool operator==(const CoverRecord&) const = default;
};

struct SscsRecord {
    std::string mode;
    std::size_t dim = 0;
    std::optional<std::size_t> k_first;
    std::vector<std::string> removed_edges;
    bool certified = false;
    std::optional<WitnessRecord> witness;
    bool operator==(const SscsRecord&) const = default;
};

struct CertificateRecord {
    std::size_t min_rank = 0;
    std::size_t lower_bound = 0;
    std::size_t generic_rank = 0;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    WitnessRecord witness;
    std::size_t patterns_checked = 0;
    bool operator==(const CertificateRecord&) const = default;
};

struct FixedRecord {
    std::string node;
    std::size_t base_dim = 0;
    std::size_t augmented_dim = 0;
    bool augmented_exhaustive = false;
    bool min_rank_equal = false;
    bool rule_member = false;
    bool member = false;
    bool certified = false;
    bool disagreement = false;
    std::optional<WitnessRecord> witness;
    bool operator==(const FixedRecord&) const = default;
};

struct FsscRecord {
    std::string mode;
    std::size_t base_dim = 0;
    std::vector<std::string> nodes;
    std::vector<FixedRecord> per_node;
    bool operator==(const FsscRecord&) const = default;
};

struct VerificationRecord {
    bool passed = true;
    std::vector<std::string> checks;
    std::vector<std::string> failures;
    bool operator==(const VerificationRecord&) const = default;
};

struct AnalysisReport {
    std::string version = kVersion;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::string shape_kind;
    bool input_connected = false;
    std::optional<LayeringRecord> layering;
    std::optional<ClassificationRecord> classification;
    std::size_t scs_dim = 0;
    CoverRecord cover;
    std::vector<SscsRecord> sscs;
    std::vector<std::string> fsc;
    std::vector<FsscRecord> fssc;
    std::vector<std::pair<std::string, CertificateRecord>> certificates;
    bool discrepancy = false;
    std::vector<std::string> discrepancy_details;
    std::optional<VerificationRecord> verification;
    std::optional<std::vector<std::string>> symcm_dump;
    std::vector<std::string> notes;
    bool operator==(const AnalysisReport&) const = default;
};

struct AnalysisOptions {
    bool paper = true;
    bool exact = true;
    bool verify = false;
    bool dump_symcm = false;
    std::uint64_t seed = 0;
    std::uint64_t budget = 4000;
};

/// Full pipeline. Throws GraphError when the graph is not input-connected
/// and std::logic_error on an internal inconsistency.
AnalysisReport analyze(const StructuredGraph& g, const AnalysisOptions& options);

std::string report_to_json(const AnalysisReport& r, bool pretty = false);
AnalysisReport report_from_json(const std::string& text);

/// Certificate JSON object for one min-rank search.
std::string certificate_to_json(const CertificateRecord& c);

/// Layered DOT drawing. With `subgraph`, edges dropped by the subgraph
/// construction for `mode` are drawn dashed.
std::string export_dot(const StructuredGraph& g, bool subgraph, ZeroabilityMode mode);

WitnessRecord witness_record(const StructuredGraph& g, const ParamAssignment& p);

}  // namespace sscs
