#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sscs/graph.hpp"
#include "sscs/polynomial.hpp"
#include "sscs/symcm.hpp"

namespace sscs {

enum class ZeroabilityMode { PaperLiteral, ExactAlgebraic };

std::string_view to_string(ZeroabilityMode m);

/// Vertex-disjoint stems (from distinct leaders) and cycles.
struct CoverSolution {
    std::vector<NodeIndex> covered;
    std::vector<std::vector<NodeIndex>> stems_used;
    std::vector<std::vector<NodeIndex>> cycles_used;
    std::size_t size = 0;
};

/// Maximum stem-and-cycle cover by min-cost circulation on the vertex-split
/// network. Does not check input-connectedness.
CoverSolution max_cover(const StructuredGraph& g);

/// Requires an input-connected graph (PreconditionError otherwise).
CoverSolution scs_dim(const StructuredGraph& g);

/// The zeroability rule has no answer within its search cap.
class UndecidedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Subset enumeration cap for the exact rule, in integrators.
inline constexpr std::size_t kMaxIntegrators = 20;

/// Can every entry of the step-k column vanish at once? Requires a
/// single-leader HDAG and 1 <= k <= depth. Throws UndecidedError when the
/// exact rule exceeds kMaxIntegrators.
bool layer_zeroable(const StructuredGraph& g, const NodeClassification& cls, const Layering& lay, std::size_t k,
                    ZeroabilityMode mode);

std::optional<std::size_t> first_zeroable_layer(const StructuredGraph& g, const NodeClassification& cls,
                                                const Layering& lay, ZeroabilityMode mode);

/// Drops every edge touching a node at step >= k_first.
StructuredGraph build_subgraph(const StructuredGraph& g, std::optional<std::size_t> k_first);

/// Edges dropped by build_subgraph, in declaration order.
std::vector<EdgeIndex> removed_edges(const StructuredGraph& g, std::optional<std::size_t> k_first);

struct SscsResult {
    std::size_t dim = 0;
    ZeroabilityMode mode = ZeroabilityMode::ExactAlgebraic;
    std::optional<std::size_t> k_first;
    /// A vanishing assignment backs k_first, and every earlier column was
    /// shown non-vanishing by an algebraic certificate or a single-term entry.
    bool certified = false;
    std::optional<ParamAssignment> witness;
    CoverSolution cover;
};

/// SSCS dimension of a single-leader HDAG.
SscsResult sscs_dim(const StructuredGraph& g, ZeroabilityMode mode, std::uint64_t seed = 0);

/// Column-vanishing system {entry(v) = 0 : v in V_k} as polynomials.
std::vector<algebra::Polynomial> layer_system(const SymCM& m, const Layering& lay, std::size_t k);

}  // namespace sscs
