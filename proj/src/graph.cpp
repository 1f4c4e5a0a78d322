#include "sscs/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <set>

#include <json.hpp>

namespace sscs {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    return std::none_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::vector<std::size_t> bfs_steps(const StructuredGraph& g) {
    std::vector<std::size_t> step(g.node_count(), kUnreached);
    std::deque<NodeIndex> queue;
    for (NodeIndex l : g.leaders()) {
        if (step[l] == kUnreached) {
            step[l] = 0;
            queue.push_back(l);
        }
    }
    while (!queue.empty()) {
        NodeIndex u = queue.front();
        queue.pop_front();
        for (EdgeIndex e : g.out_edges(u)) {
            NodeIndex v = g.edge(e).to;
            if (step[v] == kUnreached) {
                step[v] = step[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return step;
}

bool has_cycle(const StructuredGraph& g) {
    std::vector<std::size_t> indeg(g.node_count(), 0);
    for (const Edge& e : g.edges()) ++indeg[e.to];
    std::vector<NodeIndex> ready;
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        if (indeg[v] == 0) ready.push_back(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
        NodeIndex u = ready.back();
        ready.pop_back();
        ++seen;
        for (EdgeIndex e : g.out_edges(u))
            if (--indeg[g.edge(e).to] == 0) ready.push_back(g.edge(e).to);
    }
    return seen != g.node_count();
}

}  // namespace

StructuredGraph::StructuredGraph(std::vector<std::string> nodes,
                                 const std::vector<std::pair<std::string, std::string>>& edges,
                                 const std::vector<std::string>& leaders)
    : labels_(std::move(nodes)) {
    for (NodeIndex v = 0; v < labels_.size(); ++v) {
        if (!valid_label(labels_[v]))
            throw GraphError("invalid node label '" + labels_[v] + "'", labels_[v]);
        if (!by_label_.emplace(labels_[v], v).second)
            throw GraphError("duplicate node '" + labels_[v] + "'", labels_[v]);
    }
    std::set<std::pair<NodeIndex, NodeIndex>> seen;
    for (const auto& [from, to] : edges) {
        NodeIndex u = index_of(from);
        NodeIndex v = index_of(to);
        if (!seen.emplace(u, v).second)
            throw GraphError("duplicate edge " + from + "->" + to, from + "->" + to);
        edges_.push_back({u, v});
    }
    if (leaders.empty()) throw GraphError("leader set is empty", "leaders");
    for (const auto& l : leaders) {
        NodeIndex v = index_of(l);
        if (std::find(leaders_.begin(), leaders_.end(), v) != leaders_.end())
            throw GraphError("duplicate leader '" + l + "'", l);
        leaders_.push_back(v);
    }
    index();
}

void StructuredGraph::index() {
    in_.assign(labels_.size(), {});
    out_.assign(labels_.size(), {});
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
        out_[edges_[e].from].push_back(e);
        in_[edges_[e].to].push_back(e);
    }
}

std::optional<NodeIndex> StructuredGraph::find(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

NodeIndex StructuredGraph::index_of(std::string_view label) const {
    if (auto v = find(label)) return *v;
    throw GraphError("unknown node '" + std::string(label) + "'", std::string(label));
}

std::optional<EdgeIndex> StructuredGraph::find_edge(NodeIndex from, NodeIndex to) const {
    for (EdgeIndex e : out_.at(from))
        if (edges_[e].to == to) return e;
    return std::nullopt;
}

bool StructuredGraph::is_leader(NodeIndex v) const { return leader_position(v).has_value(); }

std::optional<std::size_t> StructuredGraph::leader_position(NodeIndex v) const {
    auto it = std::find(leaders_.begin(), leaders_.end(), v);
    if (it == leaders_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - leaders_.begin());
}

std::string StructuredGraph::edge_name(EdgeIndex e) const {
    return labels_[edges_.at(e).from] + "->" + labels_[edges_.at(e).to];
}

StructuredGraph StructuredGraph::with_edges(const std::vector<bool>& keep) const {
    StructuredGraph out;
    out.labels_ = labels_;
    out.by_label_ = by_label_;
    out.leaders_ = leaders_;
    for (EdgeIndex e = 0; e < edges_.size(); ++e)
        if (keep.at(e)) out.edges_.push_back(edges_[e]);
    out.index();
    return out;
}

StructuredGraph parse_graph(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw GraphError(std::string("malformed JSON: ") + e.what(), "byte " + std::to_string(e.byte));
    }
    if (!doc.is_object()) throw GraphError("graph document must be a JSON object", doc.dump());
    for (const auto& [key, _] : doc.items()) {
        if (key != "nodes" && key != "edges" && key != "leaders")
            throw GraphError("unknown key '" + key + "'", key);
    }
    for (const char* key : {"nodes", "edges", "leaders"}) {
        if (!doc.contains(key) || !doc[key].is_array())
            throw GraphError(std::string("missing array '") + key + "'", key);
    }
    auto as_label = [](const nlohmann::json& j) {
        if (!j.is_string()) throw GraphError("node labels must be strings", j.dump());
        return j.get<std::string>();
    };
    std::vector<std::string> nodes;
    for (const auto& j : doc["nodes"]) nodes.push_back(as_label(j));
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& j : doc["edges"]) {
        if (!j.is_array() || j.size() != 2) throw GraphError("edge must be a [from,to] pair", j.dump());
        edges.emplace_back(as_label(j[0]), as_label(j[1]));
    }
    std::vector<std::string> leaders;
    for (const auto& j : doc["leaders"]) leaders.push_back(as_label(j));
    return StructuredGraph(std::move(nodes), edges, leaders);
}

std::string to_json(const StructuredGraph& g) {
    nlohmann::json doc;
    doc["nodes"] = std::vector<std::string>(g.labels().begin(), g.labels().end());
    auto edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) edges.push_back({g.label(e.from), g.label(e.to)});
    doc["edges"] = std::move(edges);
    auto leaders = nlohmann::json::array();
    for (NodeIndex l : g.leaders()) leaders.push_back(g.label(l));
    doc["leaders"] = std::move(leaders);
    return doc.dump();
}

std::string_view to_string(Acyclicity a) {
    switch (a) {
        case Acyclicity::Hdag: return "HDAG";
        case Acyclicity::Dag: return "DAG";
        case Acyclicity::Cyclic: return "Cyclic";
    }
    return "?";
}

GraphShape validate(const StructuredGraph& g) {
    auto step = bfs_steps(g);
    bool connected = std::none_of(step.begin(), step.end(), [](std::size_t s) { return s == kUnreached; });
    if (has_cycle(g)) return {Acyclicity::Cyclic, connected};
    if (!connected) return {Acyclicity::Dag, false};
    bool layered = std::all_of(g.edges().begin(), g.edges().end(),
                               [&](const Edge& e) { return step[e.to] == step[e.from] + 1; });
    return {layered ? Acyclicity::Hdag : Acyclicity::Dag, true};
}

Layering layering(const StructuredGraph& g) {
    Layering out;
    out.step_of = bfs_steps(g);
    std::string missing;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (out.step_of[v] == kUnreached) missing += (missing.empty() ? "" : ",") + g.label(v);
    }
    if (!missing.empty()) throw GraphError("nodes unreachable from every leader: " + missing, missing);
    for (NodeIndex v = 0; v < g.node_count(); ++v) out.depth = std::max(out.depth, out.step_of[v]);
    out.layers.assign(out.depth + 1, {});
    for (NodeIndex v = 0; v < g.node_count(); ++v) out.layers[out.step_of[v]].push_back(v);
    return out;
}

std::string_view to_string(Role r) {
    switch (r) {
        case Role::Simple: return "simple";
        case Role::Integrator: return "integrator";
        case Role::Intermediator: return "intermediator";
    }
    return "?";
}

std::vector<NodeIndex> NodeClassification::integrators() const {
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < role_of.size(); ++v)
        if (role_of[v] == Role::Integrator) out.push_back(v);
    return out;
}

NodeClassification classify_nodes(const StructuredGraph& g) {
    if (validate(g).kind != Acyclicity::Hdag)
        throw PreconditionError("node classification requires a hierarchical DAG");
    const std::size_t n = g.node_count();
    const Layering lay = layering(g);

    NodeClassification cls;
    cls.role_of.assign(n, Role::Simple);
    cls.anchor_of.assign(n, std::nullopt);
    cls.free_stems.assign(n, 0);
    for (NodeIndex v = 0; v < n; ++v)
        if (g.in_edges(v).size() >= 2) cls.role_of[v] = Role::Integrator;

    // Layer order is a topological order in an HDAG.
    for (const auto& layer : lay.layers) {
        for (NodeIndex v : layer) {
            if (g.is_leader(v)) {
                cls.free_stems[v] = 1;
                continue;
            }
            for (EdgeIndex e : g.in_edges(v)) {
                NodeIndex u = g.edge(e).from;
                if (cls.role_of[u] != Role::Integrator) cls.free_stems[v] += cls.free_stems[u];
            }
            if (cls.role_of[v] == Role::Integrator) continue;
            NodeIndex pred = g.edge(g.in_edges(v).front()).from;
            if (cls.role_of[pred] == Role::Integrator) {
                cls.role_of[v] = Role::Intermediator;
                cls.anchor_of[v] = pred;
            } else if (cls.role_of[pred] == Role::Intermediator) {
                cls.role_of[v] = Role::Intermediator;
                cls.anchor_of[v] = cls.anchor_of[pred];
            }
        }
    }

    for (NodeIndex v = 0; v < n; ++v) {
        if (cls.role_of[v] != Role::Integrator || cls.free_stems[v] != 1) continue;
        std::vector<bool> ancestor(n, false);
        std::vector<NodeIndex> stack{v};
        while (!stack.empty()) {
            NodeIndex w = stack.back();
            stack.pop_back();
            for (EdgeIndex e : g.in_edges(w)) {
                NodeIndex u = g.edge(e).from;
                if (!ancestor[u]) {
                    ancestor[u] = true;
                    stack.push_back(u);
                }
            }
        }
        Condition1Entry entry{v, {}};
        for (NodeIndex u = 0; u < n; ++u)
            if (ancestor[u] && cls.role_of[u] == Role::Integrator) entry.blockers.push_back(u);
        cls.cond1.push_back(std::move(entry));
    }
    return cls;
}

std::vector<Stem> enumerate_stems(const StructuredGraph& g, NodeIndex target, std::size_t k) {
    std::vector<Stem> out;
    std::vector<NodeIndex> path{target};  // reversed
    std::vector<bool> on_path(g.node_count(), false);
    on_path[target] = true;

    auto walk = [&](auto&& self) -> void {
        if (path.size() == k + 1) {
            if (g.is_leader(path.back())) out.push_back({{path.rbegin(), path.rend()}});
            return;
        }
        for (EdgeIndex e : g.in_edges(path.back())) {
            NodeIndex u = g.edge(e).from;
            if (on_path[u]) continue;
            on_path[u] = true;
            path.push_back(u);
            self(self);
            path.pop_back();
            on_path[u] = false;
        }
    };
    walk(walk);

    std::sort(out.begin(), out.end(), [&](const Stem& a, const Stem& b) {
        return std::lexicographical_compare(
            a.nodes.begin(), a.nodes.end(), b.nodes.begin(), b.nodes.end(),
            [&](NodeIndex x, NodeIndex y) { return g.label(x) < g.label(y); });
    });
    return out;
}

StructuredGraph add_leader(const StructuredGraph& g, NodeIndex v) {
    if (v >= g.node_count()) throw GraphError("unknown node index " + std::to_string(v), std::to_string(v));
    std::vector<std::string> leaders;
    for (NodeIndex l : g.leaders()) leaders.push_back(g.label(l));
    if (!g.is_leader(v)) leaders.push_back(g.label(v));
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Edge& e : g.edges()) edges.emplace_back(g.label(e.from), g.label(e.to));
    return StructuredGraph(std::vector<std::string>(g.labels().begin(), g.labels().end()), edges, leaders);
}

}  // namespace sscs
