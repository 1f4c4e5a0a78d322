#include "sscs/dims.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

#include "sscs/oracle.hpp"

namespace sscs {

std::string_view to_string(ZeroabilityMode m) {
    return m == ZeroabilityMode::PaperLiteral ? "paper" : "exact";
}

namespace {

// Residual network for the min-cost circulation.
class Circulation {
public:
    explicit Circulation(std::size_t nodes) : adj_(nodes) {}

    std::size_t add(std::size_t from, std::size_t to, long cap, long cost) {
        arcs_.push_back({to, cap, cost});
        arcs_.push_back({from, 0, -cost});
        adj_[from].push_back(arcs_.size() - 2);
        adj_[to].push_back(arcs_.size() - 1);
        return arcs_.size() - 2;
    }

    long flow(std::size_t arc) const { return arcs_[arc ^ 1].cap; }

    // Cancels negative cycles until none remain (Bellman-Ford detection).
    void cancel_negative_cycles() {
        const std::size_t n = adj_.size();
        while (true) {
            std::vector<long> dist(n, 0);
            std::vector<std::size_t> pred(n, kNone);
            std::size_t touched = kNone;
            for (std::size_t round = 0; round < n; ++round) {
                touched = kNone;
                for (std::size_t u = 0; u < n; ++u) {
                    for (std::size_t a : adj_[u]) {
                        const Arc& arc = arcs_[a];
                        if (arc.cap > 0 && dist[u] + arc.cost < dist[arc.to]) {
                            dist[arc.to] = dist[u] + arc.cost;
                            pred[arc.to] = a;
                            touched = arc.to;
                        }
                    }
                }
                if (touched == kNone) return;
            }
            // Walk back n times to land on the cycle.
            std::size_t v = touched;
            for (std::size_t i = 0; i < n; ++i) v = arcs_[pred[v] ^ 1].to;
            std::vector<std::size_t> cycle;
            std::size_t u = v;
            do {
                cycle.push_back(pred[u]);
                u = arcs_[pred[u] ^ 1].to;
            } while (u != v);
            long push = std::numeric_limits<long>::max();
            for (std::size_t a : cycle) push = std::min(push, arcs_[a].cap);
            for (std::size_t a : cycle) {
                arcs_[a].cap -= push;
                arcs_[a ^ 1].cap += push;
            }
        }
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    struct Arc {
        std::size_t to;
        long cap;
        long cost;
    };
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::size_t>> adj_;
};

void require_single_leader_hdag(const StructuredGraph& g) {
    if (g.leader_count() != 1) throw PreconditionError("zeroability analysis needs exactly one leader");
    if (validate(g).kind != Acyclicity::Hdag) throw PreconditionError("zeroability analysis needs a hierarchical DAG");
}

// Carrier whose multi-term must vanish for v's entry to vanish.
std::optional<NodeIndex> carrier(const NodeClassification& cls, NodeIndex v) {
    switch (cls.role_of[v]) {
        case Role::Integrator: return v;
        case Role::Intermediator: return cls.anchor_of[v];
        case Role::Simple: return std::nullopt;
    }
    return std::nullopt;
}

struct Group {
    std::optional<NodeIndex> last;  // nullopt for the integrator-free group
    std::size_t count;
};

std::vector<Group> groups_of(const StructuredGraph& g, const NodeClassification& cls, NodeIndex z) {
    std::vector<Group> out;
    if (cls.free_stems[z] >= 1) out.push_back({std::nullopt, cls.free_stems[z]});
    std::map<NodeIndex, std::size_t> by_last;
    for (EdgeIndex e : g.in_edges(z)) {
        NodeIndex u = g.edge(e).from;
        if (auto y = carrier(cls, u)) ++by_last[*y];
    }
    for (auto [y, c] : by_last) out.push_back({y, c});
    return out;
}

bool consistent(const std::vector<Group>& groups, bool zero, const std::vector<bool>& in_s) {
    bool all_zero_capable = true;
    std::size_t nonzero_capable = 0;
    for (const Group& grp : groups) {
        bool zc = grp.last ? (in_s[*grp.last] || grp.count >= 2) : grp.count >= 2;
        bool nz = grp.last ? !in_s[*grp.last] : true;
        all_zero_capable = all_zero_capable && zc;
        if (nz) ++nonzero_capable;
    }
    return zero ? (all_zero_capable || nonzero_capable >= 2) : nonzero_capable >= 1;
}

std::optional<bool> exact_rule(const StructuredGraph& g, const NodeClassification& cls, const Layering& lay,
                               std::size_t k) {
    std::vector<bool> forced(g.node_count(), false);
    for (NodeIndex v : lay.layers[k]) forced[*carrier(cls, v)] = true;

    std::vector<NodeIndex> ints;
    for (std::size_t step = 0; step <= k; ++step)
        for (NodeIndex v : lay.layers[step])
            if (cls.role_of[v] == Role::Integrator) ints.push_back(v);
    if (ints.size() > kMaxIntegrators) return std::nullopt;

    std::vector<std::vector<Group>> groups;
    for (NodeIndex z : ints) groups.push_back(groups_of(g, cls, z));

    std::vector<bool> in_s(g.node_count(), false);
    auto dfs = [&](auto&& self, std::size_t i) -> bool {
        if (i == ints.size()) return true;
        const NodeIndex z = ints[i];
        for (bool zero : {false, true}) {
            if (forced[z] && !zero) continue;
            in_s[z] = zero;
            if (consistent(groups[i], zero, in_s) && self(self, i + 1)) return true;
        }
        in_s[z] = false;
        return false;
    };
    return dfs(dfs, 0);
}

bool paper_rule(const NodeClassification& cls, const Layering& lay, std::size_t k) {
    const auto& layer = lay.layers[k];
    auto in_layer = [&](NodeIndex v) { return std::find(layer.begin(), layer.end(), v) != layer.end(); };
    for (const auto& entry : cls.cond1) {
        if (!in_layer(entry.integrator)) continue;
        for (NodeIndex j : layer) {
            if (cls.role_of[j] != Role::Intermediator) continue;
            const auto& b = entry.blockers;
            if (std::find(b.begin(), b.end(), *cls.anchor_of[j]) != b.end()) return false;
        }
    }
    return true;
}

std::optional<bool> decide(const StructuredGraph& g, const NodeClassification& cls, const Layering& lay,
                           std::size_t k, ZeroabilityMode mode) {
    if (k == 0 || k > lay.depth) throw PreconditionError("layer index out of range");
    for (NodeIndex v : lay.layers[k])
        if (cls.role_of[v] == Role::Simple) return false;
    if (mode == ZeroabilityMode::PaperLiteral) return paper_rule(cls, lay, k);
    return exact_rule(g, cls, lay, k);
}

bool has_simple(const NodeClassification& cls, const Layering& lay, std::size_t k) {
    return std::any_of(lay.layers[k].begin(), lay.layers[k].end(),
                       [&](NodeIndex v) { return cls.role_of[v] == Role::Simple; });
}

}  // namespace

CoverSolution max_cover(const StructuredGraph& g) {
    const std::size_t n = g.node_count();
    const std::size_t source = 2 * n, sink = 2 * n + 1;
    Circulation net(2 * n + 2);
    std::vector<std::size_t> split(n), edge_arc(g.edge_count()), exit_arc(n), entry_arc(g.leader_count());
    for (NodeIndex v = 0; v < n; ++v) split[v] = net.add(2 * v, 2 * v + 1, 1, -1);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e)
        edge_arc[e] = net.add(2 * g.edge(e).from + 1, 2 * g.edge(e).to, 1, 0);
    for (std::size_t j = 0; j < g.leader_count(); ++j) entry_arc[j] = net.add(source, 2 * g.leaders()[j], 1, 0);
    for (NodeIndex v = 0; v < n; ++v) exit_arc[v] = net.add(2 * v + 1, sink, 1, 0);
    net.add(sink, source, static_cast<long>(g.leader_count()), 0);
    net.cancel_negative_cycles();

    CoverSolution cover;
    std::vector<bool> seen(n, false);
    auto next = [&](NodeIndex v) -> std::optional<NodeIndex> {
        for (EdgeIndex e : g.out_edges(v))
            if (net.flow(edge_arc[e]) > 0) return g.edge(e).to;
        return std::nullopt;
    };
    for (std::size_t j = 0; j < g.leader_count(); ++j) {
        if (net.flow(entry_arc[j]) == 0) continue;
        std::vector<NodeIndex> stem{g.leaders()[j]};
        seen[stem.back()] = true;
        while (auto w = next(stem.back())) {
            stem.push_back(*w);
            seen[*w] = true;
        }
        cover.stems_used.push_back(std::move(stem));
    }
    for (NodeIndex v = 0; v < n; ++v) {
        if (seen[v] || net.flow(split[v]) == 0) continue;
        std::vector<NodeIndex> cycle{v};
        seen[v] = true;
        for (auto w = next(v); w && *w != v; w = next(*w)) {
            cycle.push_back(*w);
            seen[*w] = true;
        }
        cover.cycles_used.push_back(std::move(cycle));
    }
    for (NodeIndex v = 0; v < n; ++v)
        if (net.flow(split[v]) > 0) cover.covered.push_back(v);
    cover.size = cover.covered.size();
    return cover;
}

CoverSolution scs_dim(const StructuredGraph& g) {
    if (!validate(g).input_connected) layering(g);  // throws with the unreachable nodes
    return max_cover(g);
}

bool layer_zeroable(const StructuredGraph& g, const NodeClassification& cls, const Layering& lay, std::size_t k,
                    ZeroabilityMode mode) {
    require_single_leader_hdag(g);
    auto answer = decide(g, cls, lay, k, mode);
    if (!answer)
        throw UndecidedError("layer " + std::to_string(k) + " has more than " + std::to_string(kMaxIntegrators) +
                             " integrators up to it");
    return *answer;
}

std::optional<std::size_t> first_zeroable_layer(const StructuredGraph& g, const NodeClassification& cls,
                                                const Layering& lay, ZeroabilityMode mode) {
    for (std::size_t k = 1; k <= lay.depth; ++k)
        if (layer_zeroable(g, cls, lay, k, mode)) return k;
    return std::nullopt;
}

std::vector<EdgeIndex> removed_edges(const StructuredGraph& g, std::optional<std::size_t> k_first) {
    std::vector<EdgeIndex> out;
    if (!k_first) return out;
    const Layering lay = layering(g);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e)
        if (lay.step_of[g.edge(e).from] >= *k_first || lay.step_of[g.edge(e).to] >= *k_first) out.push_back(e);
    return out;
}

StructuredGraph build_subgraph(const StructuredGraph& g, std::optional<std::size_t> k_first) {
    std::vector<bool> keep(g.edge_count(), true);
    for (EdgeIndex e : removed_edges(g, k_first)) keep[e] = false;
    return g.with_edges(keep);
}

std::vector<algebra::Polynomial> layer_system(const SymCM& m, const Layering& lay, std::size_t k) {
    std::vector<algebra::Polynomial> out;
    for (NodeIndex v : lay.layers.at(k))
        if (!m.entry(v, m.column(0, k)).empty()) out.push_back(to_polynomial(m.entry(v, m.column(0, k)), m.edge_count()));
    return out;
}

SscsResult sscs_dim(const StructuredGraph& g, ZeroabilityMode mode, std::uint64_t seed) {
    require_single_leader_hdag(g);
    const Layering lay = layering(g);
    const NodeClassification cls = classify_nodes(g);
    const SymCM m = build_symcm(g);
    std::mt19937_64 rng(seed);
    const OracleBudget budget;

    SscsResult out;
    out.mode = mode;
    bool lower_proven = true;
    for (std::size_t k = 1; k <= lay.depth && !out.k_first; ++k) {
        auto answer = decide(g, cls, lay, k, mode);
        if (!answer) {
            // Past the subset cap: settle the column algebraically.
            auto sys = layer_system(m, lay, k);
            if (find_vanishing_assignment(sys, m.edge_count(), rng, budget.witness_attempts))
                answer = true;
            else if (algebra::nonzero_root_status(sys, budget.groebner_reductions) ==
                     algebra::RootVerdict::NoNonzeroRoot)
                answer = false;
            else
                throw UndecidedError("column at step " + std::to_string(k) + " could not be decided");
        }
        if (*answer) {
            out.k_first = k;
        } else if (!has_simple(cls, lay, k)) {
            lower_proven = lower_proven && algebra::nonzero_root_status(layer_system(m, lay, k),
                                                                        budget.groebner_reductions) ==
                                               algebra::RootVerdict::NoNonzeroRoot;
        }
    }
    if (out.k_first) {
        out.witness = find_vanishing_assignment(layer_system(m, lay, *out.k_first), m.edge_count(), rng,
                                                budget.witness_attempts);
    }
    out.certified = lower_proven && (!out.k_first || out.witness.has_value());

    out.cover = max_cover(build_subgraph(g, out.k_first));
    out.dim = out.cover.size;
    const std::size_t expected = out.k_first ? *out.k_first : lay.depth + 1;
    if (out.dim != expected)
        throw std::logic_error("subgraph cover " + std::to_string(out.dim) + " differs from first zeroable step " +
                               std::to_string(expected));
    return out;
}

}  // namespace sscs
