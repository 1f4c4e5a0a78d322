#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "sscs/dims.hpp"
#include "sscs/oracle.hpp"

using namespace sscs;
using corpus::make;

namespace {

StructuredGraph hdag13() {
    return make(13, {{1, 2}, {2, 3}, {2, 4}, {3, 5}, {3, 6}, {4, 6}, {4, 7}, {5, 8}, {6, 8}, {6, 9}, {8, 10},
                     {8, 11}, {9, 12}, {10, 13}, {11, 13}});
}
StructuredGraph hdag7() { return make(7, {{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 6}, {5, 7}}); }
StructuredGraph hdag6() { return make(6, {{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 6}}); }
StructuredGraph chain3() { return make(3, {{1, 2}, {2, 3}}); }
StructuredGraph diamond() { return make(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}}); }

std::vector<std::string> names(const StructuredGraph& g, const std::vector<EdgeIndex>& es) {
    std::vector<std::string> out;
    for (EdgeIndex e : es) out.push_back(g.edge_name(e));
    return out;
}

void expect_valid_cover(const StructuredGraph& g, const CoverSolution& c) {
    std::set<NodeIndex> seen;
    std::set<NodeIndex> leaders_used;
    auto claim = [&](NodeIndex v) { EXPECT_TRUE(seen.insert(v).second) << "node reused " << g.label(v); };
    for (const auto& stem : c.stems_used) {
        ASSERT_FALSE(stem.empty());
        EXPECT_TRUE(g.is_leader(stem.front()));
        EXPECT_TRUE(leaders_used.insert(stem.front()).second);
        for (std::size_t i = 0; i + 1 < stem.size(); ++i) EXPECT_TRUE(g.find_edge(stem[i], stem[i + 1]));
        for (NodeIndex v : stem) claim(v);
    }
    for (const auto& cyc : c.cycles_used) {
        ASSERT_FALSE(cyc.empty());
        for (std::size_t i = 0; i < cyc.size(); ++i) EXPECT_TRUE(g.find_edge(cyc[i], cyc[(i + 1) % cyc.size()]));
        for (NodeIndex v : cyc) claim(v);
    }
    EXPECT_EQ(seen.size(), c.size);
    EXPECT_EQ(c.covered.size(), c.size);
}

}  // namespace

TEST(ScsDim, Examples) {
    EXPECT_EQ(scs_dim(hdag13()).size, 7u);
    EXPECT_EQ(scs_dim(diamond()).size, 3u);
    EXPECT_EQ(scs_dim(chain3()).size, 3u);
    EXPECT_EQ(scs_dim(make(3, {{1, 2}, {1, 3}})).size, 2u);
    expect_valid_cover(hdag13(), scs_dim(hdag13()));
}

TEST(ScsDim, CyclesCount) {
    auto g = make(4, {{1, 2}, {1, 3}, {3, 4}, {4, 3}});
    auto c = scs_dim(g);
    EXPECT_EQ(c.size, 4u);
    EXPECT_EQ(c.cycles_used.size(), 1u);
    expect_valid_cover(g, c);

    auto loop = make(2, {{1, 2}, {2, 2}});
    EXPECT_EQ(scs_dim(loop).size, 2u);
}

TEST(ScsDim, RequiresInputConnected) {
    EXPECT_THROW(scs_dim(make(3, {{1, 2}})), GraphError);
    EXPECT_EQ(max_cover(make(3, {{1, 2}})).size, 2u);
}

TEST(ScsDim, MatchesGenericRankAndIsMonotone) {
    for (const auto& g : corpus::random_dags(80, 3, 9, 17)) {
        auto c = scs_dim(g);
        expect_valid_cover(g, c);
        EXPECT_EQ(c.size, generic_rank(build_symcm(g), 3)) << to_json(g);
        for (NodeIndex v = 0; v < g.node_count(); v += 2)
            EXPECT_GE(scs_dim(add_leader(g, v)).size, c.size);
    }
}

TEST(LayerZeroable, Examples) {
    auto check = [](const StructuredGraph& g, std::size_t k, ZeroabilityMode mode) {
        return layer_zeroable(g, classify_nodes(g), layering(g), k, mode);
    };
    for (auto mode : {ZeroabilityMode::PaperLiteral, ZeroabilityMode::ExactAlgebraic}) {
        EXPECT_FALSE(check(hdag6(), 2, mode));
        EXPECT_TRUE(check(hdag6(), 3, mode));
        EXPECT_FALSE(check(hdag7(), 3, mode));
        EXPECT_FALSE(check(chain3(), 2, mode));
        EXPECT_TRUE(check(diamond(), 2, mode));
        EXPECT_FALSE(check(hdag13(), 4, mode));
        EXPECT_TRUE(check(hdag13(), 6, mode));
    }
    EXPECT_TRUE(check(hdag13(), 5, ZeroabilityMode::PaperLiteral));
    EXPECT_FALSE(check(hdag13(), 5, ZeroabilityMode::ExactAlgebraic));
    EXPECT_THROW(check(chain3(), 3, ZeroabilityMode::ExactAlgebraic), PreconditionError);
}

TEST(FirstZeroableLayer, Examples) {
    auto first = [](const StructuredGraph& g, ZeroabilityMode mode) {
        return first_zeroable_layer(g, classify_nodes(g), layering(g), mode);
    };
    EXPECT_EQ(first(hdag13(), ZeroabilityMode::PaperLiteral), 5u);
    EXPECT_EQ(first(hdag13(), ZeroabilityMode::ExactAlgebraic), 6u);
    EXPECT_EQ(first(chain3(), ZeroabilityMode::ExactAlgebraic), std::nullopt);
    EXPECT_EQ(first(hdag7(), ZeroabilityMode::PaperLiteral), std::nullopt);
}

TEST(BuildSubgraph, Examples) {
    auto g = hdag13();
    EXPECT_EQ(names(g, removed_edges(g, 5)),
              (std::vector<std::string>{"8->10", "8->11", "9->12", "10->13", "11->13"}));
    auto sub = build_subgraph(g, 5);
    EXPECT_EQ(sub.node_count(), 13u);
    EXPECT_EQ(sub.edge_count(), 10u);

    auto six = hdag6();
    EXPECT_EQ(names(six, removed_edges(six, 3)), (std::vector<std::string>{"4->6", "5->6"}));
    EXPECT_EQ(build_subgraph(chain3(), std::nullopt).edge_count(), 2u);
}

TEST(SscsDim, Examples) {
    auto paper = sscs_dim(hdag13(), ZeroabilityMode::PaperLiteral, 7);
    EXPECT_EQ(paper.dim, 5u);
    EXPECT_EQ(paper.k_first, 5u);

    auto exact = sscs_dim(hdag13(), ZeroabilityMode::ExactAlgebraic, 7);
    EXPECT_EQ(exact.dim, 6u);
    EXPECT_TRUE(exact.certified);
    ASSERT_TRUE(exact.witness);
    EXPECT_EQ(rank_exact(evaluate(build_symcm(hdag13()), *exact.witness)), 6u);

    EXPECT_EQ(sscs_dim(hdag6(), ZeroabilityMode::ExactAlgebraic).dim, 3u);
    EXPECT_EQ(sscs_dim(hdag7(), ZeroabilityMode::ExactAlgebraic).dim, 4u);
    EXPECT_EQ(sscs_dim(chain3(), ZeroabilityMode::PaperLiteral).dim, 3u);
    EXPECT_EQ(sscs_dim(diamond(), ZeroabilityMode::ExactAlgebraic).dim, 2u);
}

TEST(SscsDim, Preconditions) {
    EXPECT_THROW(sscs_dim(make(3, {{1, 2}, {2, 3}}, {1, 3}), ZeroabilityMode::ExactAlgebraic), PreconditionError);
    EXPECT_THROW(sscs_dim(make(3, {{1, 2}, {2, 3}, {1, 3}}), ZeroabilityMode::ExactAlgebraic), PreconditionError);
}

TEST(SscsDim, WitnessZeroesEveryLaterColumn) {
    for (const auto& g : corpus::single_leader_hdags(7)) {
        auto s = sscs_dim(g, ZeroabilityMode::ExactAlgebraic, 1);
        if (!s.k_first) {
            EXPECT_EQ(s.dim, layering(g).depth + 1);
            continue;
        }
        ASSERT_TRUE(s.witness) << to_json(g);
        auto values = evaluate(build_symcm(g), *s.witness);
        for (std::size_t r = 0; r < values.rows(); ++r)
            for (std::size_t c = *s.k_first; c < values.cols(); ++c) EXPECT_EQ(values.at(r, c), 0) << to_json(g);
    }
}

TEST(LayerSystem, OnePolynomialPerNode) {
    auto g = hdag13();
    auto sys = layer_system(build_symcm(g), layering(g), 5);
    EXPECT_EQ(sys.size(), 3u);
}
