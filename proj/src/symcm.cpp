#include "sscs/symcm.hpp"

#include <algorithm>
#include <sstream>

#include "sscs/oracle.hpp"

namespace sscs {

namespace {

std::vector<EdgeIndex> sorted_edges(const Monomial& m) {
    auto e = m.edges;
    std::sort(e.begin(), e.end());
    return e;
}

// Path order comparison by (from label, to label) of successive edges.
bool monomial_less(const Monomial& a, const Monomial& b, const StructuredGraph& g) {
    return std::lexicographical_compare(
        a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(), [&](EdgeIndex x, EdgeIndex y) {
            const Edge& ex = g.edge(x);
            const Edge& ey = g.edge(y);
            if (g.label(ex.from) != g.label(ey.from)) return g.label(ex.from) < g.label(ey.from);
            return g.label(ex.to) < g.label(ey.to);
        });
}

}  // namespace

std::string_view to_string(EntryClass c) {
    switch (c) {
        case EntryClass::Zero: return "zero";
        case EntryClass::SingleTerm: return "single-term";
        case EntryClass::MultiTerm: return "multi-term";
    }
    return "?";
}

bool StemPoly::same_terms(const StemPoly& other) const {
    if (size() != other.size()) return false;
    std::vector<std::pair<std::vector<EdgeIndex>, int>> a, b;
    for (const auto& m : monomials_) a.emplace_back(sorted_edges(m), m.coefficient);
    for (const auto& m : other.monomials_) b.emplace_back(sorted_edges(m), m.coefficient);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

Rational StemPoly::evaluate(const ParamAssignment& p) const {
    Rational sum = 0;
    for (const auto& m : monomials_) {
        Rational term = m.coefficient;
        for (EdgeIndex e : m.edges) {
            const auto& v = p.get(e);
            if (!v) throw PreconditionError("missing value for edge #" + std::to_string(e));
            term *= *v;
        }
        sum += term;
    }
    return sum;
}

EntryClass classify_entry(const StemPoly& p) {
    if (p.empty()) return EntryClass::Zero;
    return p.size() == 1 ? EntryClass::SingleTerm : EntryClass::MultiTerm;
}

SymCM::SymCM(std::size_t nodes, std::size_t inputs, std::size_t edges)
    : rows_(nodes), inputs_(inputs), edges_(edges), cells_(nodes * nodes * inputs) {}

bool SymCM::column_is_zero(std::size_t col) const {
    for (std::size_t r = 0; r < rows_; ++r)
        if (!entry(r, col).empty()) return false;
    return true;
}

std::size_t SymCM::nonzero_column_count() const {
    std::size_t count = 0;
    for (std::size_t c = 0; c < cols(); ++c)
        if (!column_is_zero(c)) ++count;
    return count;
}

SymCM build_symcm(const StructuredGraph& g) {
    const GraphShape shape = validate(g);
    if (shape.kind == Acyclicity::Cyclic)
        throw PreconditionError("symbolic controllability matrix needs an acyclic graph");
    const std::size_t n = g.node_count();
    SymCM m(n, g.leader_count(), g.edge_count());
    m.set_single_leader_hdag(shape.kind == Acyclicity::Hdag && g.leader_count() == 1);

    for (std::size_t j = 0; j < g.leader_count(); ++j) {
        m.entry(g.leaders()[j], m.column(j, 0)) = StemPoly::one();
        for (std::size_t k = 1; k < n; ++k) {
            bool any = false;
            for (NodeIndex i = 0; i < n; ++i) {
                std::vector<Monomial> terms;
                for (EdgeIndex e : g.in_edges(i)) {
                    for (const Monomial& prev : m.entry(g.edge(e).from, m.column(j, k - 1)).monomials()) {
                        Monomial next = prev;
                        next.edges.push_back(e);
                        terms.push_back(std::move(next));
                    }
                }
                if (terms.empty()) continue;
                std::sort(terms.begin(), terms.end(),
                          [&](const Monomial& a, const Monomial& b) { return monomial_less(a, b, g); });
                m.entry(i, m.column(j, k)) = StemPoly(std::move(terms));
                any = true;
            }
            if (!any) break;
        }
    }
    return m;
}

RationalMatrix evaluate(const SymCM& m, const ParamAssignment& p) {
    if (p.edge_count() != m.edge_count())
        throw PreconditionError("parameter assignment does not match the matrix edge count");
    RationalMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m.entry(r, c).empty()) out.at(r, c) = m.entry(r, c).evaluate(p);
    return out;
}

SymCM modified_symcm(const SymCM& m, std::optional<std::size_t> k_first) {
    SymCM out = m;
    if (!k_first) return out;
    for (std::size_t c = 0; c < out.cols(); ++c) {
        if (out.step_of(c) < *k_first) continue;
        for (std::size_t r = 0; r < out.rows(); ++r) out.entry(r, c) = StemPoly();
    }
    return out;
}

ParamAssignment random_assignment(std::size_t edge_count, std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> magnitude(1, bound);
    std::bernoulli_distribution negative(0.5);
    ParamAssignment p(edge_count);
    for (EdgeIndex e = 0; e < edge_count; ++e) {
        int v = magnitude(rng);
        p.set(e, negative(rng) ? -v : v);
    }
    return p;
}

std::size_t generic_rank(const SymCM& m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int round = 0; round < 5; ++round) {
        auto first = rank_exact(evaluate(m, random_assignment(m.edge_count(), rng)));
        auto second = rank_exact(evaluate(m, random_assignment(m.edge_count(), rng)));
        if (first != second) continue;
        if (m.single_leader_hdag() && first != m.nonzero_column_count())
            throw std::logic_error("generic rank " + std::to_string(first) + " disagrees with " +
                                   std::to_string(m.nonzero_column_count()) + " non-zero columns");
        return first;
    }
    throw UnstableRankError("generic rank not confirmed after 5 rounds");
}

std::string format_monomial(const Monomial& mono, const StructuredGraph& g) {
    std::string out = mono.coefficient < 0 ? "-" : "+";
    int mag = mono.coefficient < 0 ? -mono.coefficient : mono.coefficient;
    if (mono.edges.empty()) return out + std::to_string(mag);
    if (mag != 1) out += std::to_string(mag) + "·";
    for (std::size_t i = 0; i < mono.edges.size(); ++i) {
        const Edge& e = g.edge(mono.edges[i]);
        if (i) out += "·";
        out += "a_{" + g.label(e.from) + "," + g.label(e.to) + "}";
    }
    return out;
}

std::string dump(const SymCM& m, const StructuredGraph& g) {
    std::ostringstream os;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const StemPoly& p = m.entry(r, c);
            if (p.empty()) continue;
            os << "row=" << g.label(r) << " input=" << g.label(g.leaders()[m.input_of(c)])
               << " step=" << m.step_of(c) << " terms=" << p.size() << " poly=";
            for (const auto& mono : p.monomials()) os << format_monomial(mono, g);
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace sscs
