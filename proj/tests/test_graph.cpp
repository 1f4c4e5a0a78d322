#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "sscs/graph.hpp"

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

std::vector<std::vector<std::string>> layer_labels(const StructuredGraph& g) {
    std::vector<std::vector<std::string>> out;
    for (const auto& layer : layering(g).layers) {
        std::vector<std::string> l;
        for (NodeIndex v : layer) l.push_back(g.label(v));
        out.push_back(l);
    }
    return out;
}

std::string parse_error_token(const std::string& text) {
    try {
        parse_graph(text);
    } catch (const GraphError& e) {
        return e.token();
    }
    return "<no error>";
}

}  // namespace

TEST(ParseGraph, SmallestChain) {
    auto g = parse_graph(R"({"nodes":["1","2"],"edges":[["1","2"]],"leaders":["1"]})");
    EXPECT_EQ(g.node_count(), 2u);
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_EQ(g.edge_name(0), "1->2");
}

TEST(ParseGraph, SixNodeGraphKeepsDeclarationOrder) {
    auto g = parse_graph(to_json(hdag6()));
    // Seven state edges; the input arrow is expressed by the leader list.
    EXPECT_EQ(g.edge_count(), 7u);
    EXPECT_EQ(g.label(0), "1");
    EXPECT_EQ(g.edge_name(6), "5->6");
    EXPECT_EQ(to_json(g), to_json(hdag6()));
}

TEST(ParseGraph, RejectsBadDocuments) {
    EXPECT_EQ(parse_error_token(R"({"nodes":["1"],"edges":[["1","9"]],"leaders":["1"]})"), "9");
    EXPECT_EQ(parse_error_token(R"({"nodes":["1","1"],"edges":[],"leaders":["1"]})"), "1");
    EXPECT_EQ(parse_error_token(R"({"nodes":["1","2"],"edges":[["1","2"],["1","2"]],"leaders":["1"]})"), "1->2");
    EXPECT_EQ(parse_error_token(R"({"nodes":["1"],"edges":[],"leaders":["1","1"]})"), "1");
    EXPECT_NE(parse_error_token(R"({"nodes":["1"],"edges":[],"leaders":[]})"), "<no error>");
    EXPECT_EQ(parse_error_token(R"({"nodes":["1"],"edges":[],"leaders":["1"],"extra":1})"), "extra");
    EXPECT_NE(parse_error_token(R"({"nodes":["1"],"edges":[],)"), "<no error>");
    EXPECT_NE(parse_error_token(R"({"nodes":["a b"],"edges":[],"leaders":["a b"]})"), "<no error>");
    EXPECT_NE(parse_error_token(R"({"nodes":[1],"edges":[],"leaders":["1"]})"), "<no error>");
    EXPECT_NE(parse_error_token(R"({"nodes":["1"],"leaders":["1"]})"), "<no error>");
}

TEST(Validate, Shapes) {
    EXPECT_EQ(validate(hdag13()), (GraphShape{Acyclicity::Hdag, true}));
    EXPECT_EQ(validate(chain3()), (GraphShape{Acyclicity::Hdag, true}));

    auto skip = make(13, {{1, 2}, {2, 3}, {2, 4}, {3, 5}, {3, 6}, {4, 6}, {4, 7}, {5, 8}, {6, 8}, {6, 9}, {8, 10},
                          {8, 11}, {9, 12}, {10, 13}, {11, 13}, {2, 6}});
    EXPECT_EQ(validate(skip), (GraphShape{Acyclicity::Dag, true}));

    auto cyclic = make(4, {{1, 2}, {2, 3}, {3, 2}, {3, 4}});
    EXPECT_EQ(validate(cyclic).kind, Acyclicity::Cyclic);

    auto loose = make(3, {{1, 2}});
    EXPECT_FALSE(validate(loose).input_connected);
    EXPECT_EQ(validate(loose).kind, Acyclicity::Dag);

    auto leader_with_input = make(3, {{1, 2}, {2, 3}, {3, 1}});
    EXPECT_EQ(validate(leader_with_input).kind, Acyclicity::Cyclic);
}

TEST(Layering, Examples) {
    using L = std::vector<std::vector<std::string>>;
    EXPECT_EQ(layer_labels(hdag13()), (L{{"1"}, {"2"}, {"3", "4"}, {"5", "6", "7"}, {"8", "9"}, {"10", "11", "12"},
                                         {"13"}}));
    EXPECT_EQ(layering(hdag13()).depth, 6u);
    EXPECT_EQ(layer_labels(chain3()), (L{{"1"}, {"2"}, {"3"}}));
    EXPECT_EQ(layer_labels(hdag7()), (L{{"1"}, {"2", "3"}, {"4", "5"}, {"6", "7"}}));
    EXPECT_EQ(layering(hdag7()).depth, 3u);
}

TEST(Layering, UnreachableNodesAreListed) {
    auto g = make(4, {{1, 2}});
    try {
        layering(g);
        FAIL() << "expected an error";
    } catch (const GraphError& e) {
        EXPECT_EQ(e.token(), "3,4");
    }
}

TEST(Layering, InvariantUnderDeclarationOrder) {
    std::mt19937_64 rng(5);
    for (const auto& g : corpus::single_leader_hdags(6)) {
        std::vector<std::string> nodes(g.labels().begin(), g.labels().end());
        std::vector<std::pair<std::string, std::string>> edges;
        for (const Edge& e : g.edges()) edges.emplace_back(g.label(e.from), g.label(e.to));
        std::shuffle(nodes.begin(), nodes.end(), rng);
        std::shuffle(edges.begin(), edges.end(), rng);
        StructuredGraph h(nodes, edges, {"1"});
        const Layering a = layering(g), b = layering(h);
        for (NodeIndex v = 0; v < g.node_count(); ++v)
            EXPECT_EQ(a.step_of[v], b.step_of[h.index_of(g.label(v))]);
    }
}

TEST(Classify, SevenNodeGraph) {
    auto g = hdag7();
    auto cls = classify_nodes(g);
    EXPECT_EQ(cls.integrators(), (std::vector<NodeIndex>{g.index_of("5"), g.index_of("6")}));
    EXPECT_EQ(cls.role_of[g.index_of("7")], Role::Intermediator);
    EXPECT_EQ(cls.anchor_of[g.index_of("7")], g.index_of("5"));
    ASSERT_EQ(cls.cond1.size(), 1u);
    EXPECT_EQ(cls.cond1[0], (Condition1Entry{g.index_of("6"), {g.index_of("5")}}));
}

TEST(Classify, Chain) {
    auto cls = classify_nodes(chain3());
    for (Role r : cls.role_of) EXPECT_EQ(r, Role::Simple);
    EXPECT_TRUE(cls.cond1.empty());
}

TEST(Classify, ThirteenNodeGraph) {
    auto g = hdag13();
    auto cls = classify_nodes(g);
    auto idx = [&](const char* s) { return g.index_of(s); };
    EXPECT_EQ(cls.integrators(), (std::vector<NodeIndex>{idx("6"), idx("8"), idx("13")}));
    EXPECT_EQ(cls.anchor_of[idx("9")], idx("6"));
    EXPECT_EQ(cls.anchor_of[idx("10")], idx("8"));
    EXPECT_EQ(cls.anchor_of[idx("11")], idx("8"));
    EXPECT_EQ(cls.anchor_of[idx("12")], idx("6"));
    ASSERT_EQ(cls.cond1.size(), 1u);
    EXPECT_EQ(cls.cond1[0], (Condition1Entry{idx("8"), {idx("6")}}));
    EXPECT_EQ(cls.free_stems[idx("6")], 2u);
    EXPECT_EQ(cls.free_stems[idx("13")], 0u);
}

TEST(Classify, RejectsNonHierarchical) {
    EXPECT_THROW(classify_nodes(make(3, {{1, 2}, {2, 3}, {1, 3}})), PreconditionError);
}

TEST(Classify, RolesMatchStemEnumeration) {
    for (const auto& g : corpus::single_leader_hdags(7)) {
        const auto cls = classify_nodes(g);
        const auto lay = layering(g);
        const auto ints = cls.integrators();
        for (NodeIndex v = 0; v < g.node_count(); ++v) {
            const auto stems = enumerate_stems(g, v, lay.step_of[v]);
            EXPECT_EQ(cls.role_of[v] == Role::Simple, stems.size() == 1) << to_json(g) << " node " << g.label(v);

            std::size_t free = 0;
            for (const auto& s : stems) {
                bool clean = std::none_of(s.nodes.begin(), s.nodes.end() - 1, [&](NodeIndex u) {
                    return cls.role_of[u] == Role::Integrator;
                });
                if (clean) ++free;
            }
            EXPECT_EQ(cls.free_stems[v], free);
            const bool in_cond1 = std::any_of(cls.cond1.begin(), cls.cond1.end(),
                                              [&](const Condition1Entry& e) { return e.integrator == v; });
            EXPECT_EQ(in_cond1, cls.role_of[v] == Role::Integrator && free == 1);

            if (cls.role_of[v] == Role::Intermediator) {
                // Walk unique predecessors back to the anchor.
                NodeIndex w = v;
                std::size_t steps = 0;
                while (cls.role_of[w] != Role::Integrator && steps <= g.node_count()) {
                    w = g.edge(g.in_edges(w).front()).from;
                    ++steps;
                }
                EXPECT_EQ(cls.anchor_of[v], w);
            }
        }
    }
}

TEST(EnumerateStems, Examples) {
    auto g = hdag6();
    auto stems = enumerate_stems(g, g.index_of("5"), 2);
    ASSERT_EQ(stems.size(), 2u);
    EXPECT_EQ(stems[0].nodes, (std::vector<NodeIndex>{0, 1, 4}));
    EXPECT_EQ(stems[1].nodes, (std::vector<NodeIndex>{0, 2, 4}));
    EXPECT_TRUE(enumerate_stems(g, g.index_of("5"), 1).empty());

    auto c = chain3();
    auto s = enumerate_stems(c, 2, 2);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].steps(), 2u);
}

TEST(AddLeader, Examples) {
    auto g = add_leader(hdag13(), hdag13().index_of("13"));
    ASSERT_EQ(g.leader_count(), 2u);
    EXPECT_EQ(g.label(g.leaders()[1]), "13");

    auto same = add_leader(chain3(), 0);
    EXPECT_EQ(same.leader_count(), 1u);

    auto d = add_leader(make(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}}), 3);
    EXPECT_EQ(d.label(d.leaders()[0]), "1");
    EXPECT_EQ(d.label(d.leaders()[1]), "4");
    EXPECT_THROW(add_leader(chain3(), 7), GraphError);
}
