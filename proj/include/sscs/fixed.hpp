#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sscs/dims.hpp"
#include "sscs/graph.hpp"
#include "sscs/oracle.hpp"

namespace sscs {

/// Nodes whose addition as a leader leaves the SCS dimension unchanged.
std::vector<NodeIndex> fsc_nodes(const StructuredGraph& g);

struct FixedNodeRecord {
    NodeIndex node = 0;
    std::size_t base_dim = 0;
    /// Oracle minimum rank with the node added as a leader.
    std::size_t augmented_dim = 0;
    bool augmented_exhaustive = false;
    /// augmented_dim == base_dim, the bare minimum-rank comparison.
    bool min_rank_equal = false;
    /// Graph rule: alone in its layer, before the first zeroable layer.
    bool rule_member = false;
    bool member = false;
    /// The oracle settled membership (proof column or witness).
    bool certified = false;
    /// Oracle verdict contradicts the graph rule.
    bool disagreement = false;
    std::optional<ParamAssignment> witness;
};

struct FixedNodeReport {
    ZeroabilityMode mode = ZeroabilityMode::ExactAlgebraic;
    std::size_t base_dim = 0;
    std::vector<NodeIndex> fsc;
    std::vector<NodeIndex> fssc;
    std::vector<FixedNodeRecord> per_node;
};

/**
 * FSSC nodes of a single-leader HDAG: nodes whose basis vector lies in the
 * controllable subspace at every nonzero parameter assignment. Membership
 * needs the graph rule and an oracle proof; nodes the oracle cannot settle
 * are left out with certified = false. In exact mode a certified oracle
 * verdict against the graph rule throws std::logic_error.
 */
FixedNodeReport fssc_nodes(const StructuredGraph& g, ZeroabilityMode mode, std::uint64_t seed = 0,
                           const OracleBudget& budget = {});

}  // namespace sscs
