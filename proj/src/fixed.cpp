#include "sscs/fixed.hpp"

#include <stdexcept>

namespace sscs {

std::vector<NodeIndex> fsc_nodes(const StructuredGraph& g) {
    const std::size_t base = scs_dim(g).size;
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        if (g.is_leader(v) || max_cover(add_leader(g, v)).size == base) out.push_back(v);
    return out;
}

FixedNodeReport fssc_nodes(const StructuredGraph& g, ZeroabilityMode mode, std::uint64_t seed,
                           const OracleBudget& budget) {
    const SscsResult base = sscs_dim(g, mode, seed);
    const Layering lay = layering(g);
    const SymCM m = build_symcm(g);
    const MinRankCertificate base_min = min_rank(m, seed, budget);

    FixedNodeReport out;
    out.mode = mode;
    out.base_dim = base.dim;
    out.fsc = fsc_nodes(g);

    std::vector<ParamAssignment> probes{base_min.witness};
    if (base.witness) probes.push_back(*base.witness);

    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        FixedNodeRecord rec;
        rec.node = v;
        rec.base_dim = base.dim;
        if (g.is_leader(v)) {
            rec.augmented_dim = base.dim;
            rec.augmented_exhaustive = true;
            rec.min_rank_equal = rec.rule_member = rec.member = rec.certified = true;
            out.fssc.push_back(v);
            out.per_node.push_back(std::move(rec));
            continue;
        }
        const std::size_t step = lay.step_of[v];
        rec.rule_member = lay.layers[step].size() == 1 && (!base.k_first || step < *base.k_first);

        const SymCM aug = build_symcm(add_leader(g, v));
        const MinRankCertificate cert = min_rank(aug, seed, budget);
        rec.augmented_dim = cert.min_rank;
        rec.augmented_exhaustive = cert.exhaustive;
        rec.min_rank_equal = cert.min_rank == base.dim;

        const SpanCheck span = basis_vector_in_span(m, aug, v, probes, seed, budget);
        if (span.verdict == SpanVerdict::NotAlwaysInSpan) {
            rec.witness = span.witness;
            rec.certified = true;
            rec.disagreement = rec.rule_member;
        } else if (span.verdict == SpanVerdict::AlwaysInSpan) {
            rec.certified = true;
            rec.disagreement = !rec.rule_member;
        }
        if (rec.disagreement && mode == ZeroabilityMode::ExactAlgebraic)
            throw std::logic_error("node " + g.label(v) + ": oracle contradicts the fixed-node rule");
        rec.member = rec.rule_member && span.verdict == SpanVerdict::AlwaysInSpan;
        if (rec.member) out.fssc.push_back(v);
        out.per_node.push_back(std::move(rec));
    }
    return out;
}

}  // namespace sscs
