#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sscs {

using NodeIndex = std::size_t;
using EdgeIndex = std::size_t;

struct Edge {
    NodeIndex from;
    NodeIndex to;
};

/// Raised for malformed or inconsistent graph input. `token()` carries the
/// offending label or JSON fragment.
class GraphError : public std::runtime_error {
public:
    GraphError(const std::string& what, std::string token)
        : std::runtime_error(what), token_(std::move(token)) {}

    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

/// A violated operation precondition (wrong graph shape, missing data).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Pattern graph of a structured network.
 *
 * Nodes are addressed by dense indices in declaration order; edges keep their
 * declaration order and double as parameter indices. Leader order fixes the
 * input-column order of the controllability matrix.
 */
class StructuredGraph {
public:
    StructuredGraph(std::vector<std::string> nodes,
                    const std::vector<std::pair<std::string, std::string>>& edges,
                    const std::vector<std::string>& leaders);

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t leader_count() const noexcept { return leaders_.size(); }

    const std::string& label(NodeIndex v) const { return labels_.at(v); }
    std::span<const std::string> labels() const noexcept { return labels_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
    std::span<const NodeIndex> leaders() const noexcept { return leaders_; }

    std::optional<NodeIndex> find(std::string_view label) const;
    /// Throws GraphError naming `label` when it is not declared.
    NodeIndex index_of(std::string_view label) const;
    std::optional<EdgeIndex> find_edge(NodeIndex from, NodeIndex to) const;

    bool is_leader(NodeIndex v) const;
    /// Position of `v` in the leader list.
    std::optional<std::size_t> leader_position(NodeIndex v) const;

    /// Incoming / outgoing edge indices, in edge declaration order.
    std::span<const EdgeIndex> in_edges(NodeIndex v) const { return in_.at(v); }
    std::span<const EdgeIndex> out_edges(NodeIndex v) const { return out_.at(v); }

    /// "u->v" using node labels.
    std::string edge_name(EdgeIndex e) const;

    /// Same nodes and leaders, keeping only the edges for which `keep` is true.
    StructuredGraph with_edges(const std::vector<bool>& keep) const;

private:
    StructuredGraph() = default;
    void index();

    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<NodeIndex> leaders_;
    std::unordered_map<std::string, NodeIndex> by_label_;
    std::vector<std::vector<EdgeIndex>> in_;
    std::vector<std::vector<EdgeIndex>> out_;
};

/// Parses `{"nodes":[...],"edges":[[u,v],...],"leaders":[...]}`. Unknown keys,
/// undeclared nodes, duplicates and an empty leader set are rejected.
StructuredGraph parse_graph(std::string_view text);

/// Inverse of parse_graph (compact, declaration order).
std::string to_json(const StructuredGraph& g);

enum class Acyclicity { Hdag, Dag, Cyclic };

struct GraphShape {
    Acyclicity kind;
    bool input_connected;

    bool operator==(const GraphShape&) const = default;
};

std::string_view to_string(Acyclicity a);

/// Classifies the graph; never rejects.
GraphShape validate(const StructuredGraph& g);

struct Layering {
    std::vector<std::size_t> step_of;              // indexed by NodeIndex
    std::vector<std::vector<NodeIndex>> layers;    // V_0 ... V_depth
    std::size_t depth = 0;
};

/// Breadth-first shortest-stem layering from all leaders. Throws GraphError
/// listing the unreachable nodes when the graph is not input-connected.
Layering layering(const StructuredGraph& g);

enum class Role { Simple, Integrator, Intermediator };

std::string_view to_string(Role r);

struct Condition1Entry {
    NodeIndex integrator;
    std::vector<NodeIndex> blockers;  // integrator ancestors, declaration order

    bool operator==(const Condition1Entry&) const = default;
};

struct NodeClassification {
    std::vector<Role> role_of;
    std::vector<std::optional<NodeIndex>> anchor_of;  // set for intermediators
    /// Number of stems reaching the node whose nodes before it are all
    /// non-integrators.
    std::vector<std::size_t> free_stems;
    std::vector<Condition1Entry> cond1;

    std::vector<NodeIndex> integrators() const;
};

/// Requires an HDAG (throws PreconditionError otherwise).
NodeClassification classify_nodes(const StructuredGraph& g);

struct Stem {
    std::vector<NodeIndex> nodes;

    std::size_t steps() const { return nodes.empty() ? 0 : nodes.size() - 1; }
    bool operator==(const Stem&) const = default;
};

/// All simple leader-originating paths with exactly `k` edges ending at
/// `target`, ordered lexicographically by node label sequence.
std::vector<Stem> enumerate_stems(const StructuredGraph& g, NodeIndex target, std::size_t k);

/// Appends `v` to the leader list; no-op when it already is a leader.
StructuredGraph add_leader(const StructuredGraph& g, NodeIndex v);

}  // namespace sscs
