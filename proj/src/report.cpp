#include "sscs/report.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <json.hpp>

#include "sscs/fixed.hpp"
#include "sscs/oracle.hpp"
#include "sscs/symcm.hpp"

namespace sscs {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> labels_of(const StructuredGraph& g, const std::vector<NodeIndex>& nodes) {
    std::vector<std::string> out;
    for (NodeIndex v : nodes) out.push_back(g.label(v));
    return out;
}

CoverRecord cover_record(const StructuredGraph& g, const CoverSolution& c) {
    CoverRecord out;
    out.size = c.size;
    for (const auto& s : c.stems_used) out.stems.push_back(labels_of(g, s));
    for (const auto& s : c.cycles_used) out.cycles.push_back(labels_of(g, s));
    return out;
}

SscsRecord sscs_record(const StructuredGraph& g, const SscsResult& s) {
    SscsRecord out;
    out.mode = std::string(to_string(s.mode));
    out.dim = s.dim;
    out.k_first = s.k_first;
    for (EdgeIndex e : removed_edges(g, s.k_first)) out.removed_edges.push_back(g.edge_name(e));
    out.certified = s.certified;
    if (s.witness) out.witness = witness_record(g, *s.witness);
    return out;
}

CertificateRecord certificate_record(const StructuredGraph& g, const MinRankCertificate& c) {
    CertificateRecord out;
    out.min_rank = c.min_rank;
    out.lower_bound = c.lower_bound;
    out.generic_rank = c.generic_rank;
    out.exhaustive = c.exhaustive;
    out.seed = c.seed;
    out.witness = witness_record(g, c.witness);
    out.patterns_checked = c.patterns_checked;
    return out;
}

FsscRecord fssc_record(const StructuredGraph& g, const FixedNodeReport& f) {
    FsscRecord out;
    out.mode = std::string(to_string(f.mode));
    out.base_dim = f.base_dim;
    out.nodes = labels_of(g, f.fssc);
    for (const auto& n : f.per_node) {
        FixedRecord rec;
        rec.node = g.label(n.node);
        rec.base_dim = n.base_dim;
        rec.augmented_dim = n.augmented_dim;
        rec.augmented_exhaustive = n.augmented_exhaustive;
        rec.min_rank_equal = n.min_rank_equal;
        rec.rule_member = n.rule_member;
        rec.member = n.member;
        rec.certified = n.certified;
        rec.disagreement = n.disagreement;
        if (n.witness) rec.witness = witness_record(g, *n.witness);
        out.per_node.push_back(std::move(rec));
    }
    return out;
}

std::string join(const std::vector<std::string>& items) {
    std::string out = "{";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
    return out + "}";
}

std::string k_text(const std::optional<std::size_t>& k) { return k ? std::to_string(*k) : "none"; }

class Verifier {
public:
    explicit Verifier(VerificationRecord& rec) : rec_(rec) {}

    void check(const std::string& name, bool ok, const std::string& detail = {}) {
        rec_.checks.push_back(name);
        if (!ok) {
            rec_.failures.push_back(detail.empty() ? name : name + ": " + detail);
            rec_.passed = false;
        }
    }

private:
    VerificationRecord& rec_;
};

void verify(const StructuredGraph& g, const AnalysisOptions& options, const std::optional<SymCM>& m,
            const std::optional<MinRankCertificate>& cert, const std::optional<SscsResult>& exact,
            const std::optional<FixedNodeReport>& fixed_exact, AnalysisReport& r) {
    VerificationRecord rec;
    Verifier v(rec);
    if (m) {
        std::size_t generic = 0;
        std::string detail;
        try {
            generic = generic_rank(*m, options.seed);
        } catch (const UnstableRankError& e) {
            detail = e.what();
        }
        v.check("scs_dim equals generic rank", detail.empty() && generic == r.scs_dim,
                detail.empty() ? std::to_string(generic) + " vs " + std::to_string(r.scs_dim) : detail);
        std::size_t best = max_rank(*m, 5, options.seed);
        v.check("scs_dim equals maximum sampled rank", best == r.scs_dim,
                std::to_string(best) + " vs " + std::to_string(r.scs_dim));
        bool swp = true;
        std::string first_bad;
        for (NodeIndex i = 0; i < g.node_count() && swp; ++i)
            for (std::size_t k = 0; k < g.node_count() && swp; ++k)
                if (!swp_crosscheck(g, *m, i, k)) {
                    swp = false;
                    first_bad = "row " + g.label(i) + " step " + std::to_string(k);
                }
        v.check("matrix entries match enumerated stems", swp, first_bad);
    }
    if (m && cert && exact) {
        bool ok = cert->min_rank >= exact->dim && (!cert->exhaustive || cert->min_rank == exact->dim);
        v.check("exact sscs_dim equals oracle minimum rank", ok,
                "oracle " + std::to_string(cert->min_rank) + (cert->exhaustive ? "" : " (not exhaustive)") +
                    " vs " + std::to_string(exact->dim));
        if (!cert->exhaustive) r.notes.push_back("oracle minimum rank not proven; lower bound " +
                                                 std::to_string(cert->lower_bound));
        std::size_t modified = generic_rank(modified_symcm(*m, exact->k_first), options.seed);
        v.check("minimum rank equals generic rank of modified matrix", modified == cert->min_rank,
                std::to_string(modified) + " vs " + std::to_string(cert->min_rank));

        std::mt19937_64 rng(options.seed);
        bool bounded = true;
        for (int t = 0; t < 20 && bounded; ++t) {
            std::size_t rank = rank_exact(evaluate(*m, random_assignment(m->edge_count(), rng, 3)));
            bounded = exact->dim <= rank && rank <= r.scs_dim;
        }
        v.check("sampled ranks lie between sscs_dim and scs_dim", bounded);
        if (!exact->certified) r.notes.push_back("exact first zeroable layer lacks an oracle certificate");
    }
    if (fixed_exact) {
        const auto& fssc = fixed_exact->fssc;
        const auto& fsc_nodes_ = r.fsc;
        std::vector<std::string> fssc_labels = labels_of(g, fssc);
        bool subset = std::all_of(fssc_labels.begin(), fssc_labels.end(), [&](const std::string& x) {
            return std::find(fsc_nodes_.begin(), fsc_nodes_.end(), x) != fsc_nodes_.end();
        });
        v.check("fssc is a subset of fsc", subset);
        bool leaders = std::all_of(g.leaders().begin(), g.leaders().end(), [&](NodeIndex l) {
            return std::find(fssc.begin(), fssc.end(), l) != fssc.end();
        });
        v.check("leaders are fssc nodes", leaders);
        if (fixed_exact->base_dim == r.scs_dim) v.check("fssc equals fsc when dimensions coincide", fssc_labels == r.fsc);
        if (fixed_exact->base_dim == g.node_count())
            v.check("every node is fssc at full dimension", fssc.size() == g.node_count());
        bool certified = std::all_of(fixed_exact->per_node.begin(), fixed_exact->per_node.end(),
                                     [](const FixedNodeRecord& n) { return n.certified; });
        if (!certified) r.notes.push_back("some fixed-node verdicts are uncertified");
    }
    r.verification = std::move(rec);
}

}  // namespace

WitnessRecord witness_record(const StructuredGraph& g, const ParamAssignment& p) {
    WitnessRecord out;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e)
        if (const auto& value = p.get(e)) out.emplace_back(g.edge_name(e), to_string(*value));
    return out;
}

AnalysisReport analyze(const StructuredGraph& g, const AnalysisOptions& options) {
    AnalysisReport r;
    r.seed = options.seed;
    r.budget = options.budget;
    const GraphShape shape = validate(g);
    r.shape_kind = std::string(to_string(shape.kind));
    r.input_connected = shape.input_connected;

    const Layering lay = layering(g);
    LayeringRecord lrec;
    lrec.depth = lay.depth;
    for (const auto& layer : lay.layers) lrec.layers.push_back(labels_of(g, layer));
    r.layering = std::move(lrec);

    if (shape.kind == Acyclicity::Hdag) {
        const NodeClassification cls = classify_nodes(g);
        ClassificationRecord crec;
        for (NodeIndex v = 0; v < g.node_count(); ++v) {
            crec.roles.emplace_back(g.label(v), std::string(to_string(cls.role_of[v])));
            if (cls.anchor_of[v]) crec.anchors.emplace_back(g.label(v), g.label(*cls.anchor_of[v]));
        }
        for (const auto& entry : cls.cond1)
            crec.cond1.emplace_back(g.label(entry.integrator), labels_of(g, entry.blockers));
        r.classification = std::move(crec);
    }

    const CoverSolution scs = scs_dim(g);
    r.scs_dim = scs.size;
    r.cover = cover_record(g, scs);
    r.fsc = labels_of(g, fsc_nodes(g));

    const OracleBudget budget = OracleBudget::from_scalar(options.budget);
    std::optional<SymCM> m;
    std::optional<MinRankCertificate> cert;
    if (shape.kind != Acyclicity::Cyclic) {
        m = build_symcm(g);
        cert = min_rank(*m, options.seed, budget);
        r.certificates.emplace_back("min_rank", certificate_record(g, *cert));
    } else {
        r.notes.push_back("cyclic graph: no symbolic matrix or minimum rank");
    }
    if (options.dump_symcm) {
        r.symcm_dump.emplace();
        if (m) {
            std::istringstream lines(dump(*m, g));
            for (std::string line; std::getline(lines, line);) r.symcm_dump->push_back(line);
        }
    }

    std::optional<SscsResult> exact;
    std::optional<FixedNodeReport> fixed_exact;
    if (shape.kind == Acyclicity::Hdag && g.leader_count() == 1) {
        const SscsResult paper = sscs_dim(g, ZeroabilityMode::PaperLiteral, options.seed);
        exact = sscs_dim(g, ZeroabilityMode::ExactAlgebraic, options.seed);
        const bool differ = paper.dim != exact->dim || paper.k_first != exact->k_first;
        if (options.paper || differ) r.sscs.push_back(sscs_record(g, paper));
        if (options.exact || differ) r.sscs.push_back(sscs_record(g, *exact));
        if (differ) {
            r.discrepancy = true;
            r.discrepancy_details.push_back("sscs_dim: paper " + std::to_string(paper.dim) + " (k_first " +
                                            k_text(paper.k_first) + "), exact " + std::to_string(exact->dim) +
                                            " (k_first " + k_text(exact->k_first) + ")");
        }

        std::optional<FixedNodeReport> fixed_paper;
        if (options.paper) fixed_paper = fssc_nodes(g, ZeroabilityMode::PaperLiteral, options.seed, budget);
        if (options.exact || options.verify)
            fixed_exact = fssc_nodes(g, ZeroabilityMode::ExactAlgebraic, options.seed, budget);
        if (fixed_paper) {
            r.fssc.push_back(fssc_record(g, *fixed_paper));
            for (const auto& n : fixed_paper->per_node)
                if (n.disagreement) {
                    r.discrepancy = true;
                    r.discrepancy_details.push_back("fssc paper rule contradicted by oracle at node " +
                                                    g.label(n.node));
                }
        }
        if (fixed_exact && options.exact) r.fssc.push_back(fssc_record(g, *fixed_exact));
        if (fixed_paper && fixed_exact && fixed_paper->fssc != fixed_exact->fssc) {
            r.discrepancy = true;
            r.discrepancy_details.push_back("fssc: paper " + join(labels_of(g, fixed_paper->fssc)) + ", exact " +
                                            join(labels_of(g, fixed_exact->fssc)));
        }
    } else {
        r.notes.push_back("sscs and fssc need a single-leader hierarchical DAG");
    }

    if (options.verify) verify(g, options, m, cert, exact, fixed_exact, r);
    return r;
}

// JSON ---------------------------------------------------------------------

namespace {

json witness_json(const WitnessRecord& w) {
    json out = json::object();
    for (const auto& [edge, value] : w) out[edge] = value;
    return out;
}

WitnessRecord witness_from(const json& j) {
    WitnessRecord out;
    for (const auto& [edge, value] : j.items()) out.emplace_back(edge, value.get<std::string>());
    return out;
}

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json certificate_json(const CertificateRecord& c) {
    return json{{"min_rank", c.min_rank},
                {"exhaustive", c.exhaustive},
                {"seed", c.seed},
                {"witness", witness_json(c.witness)},
                {"patterns_checked", c.patterns_checked},
                {"lower_bound", c.lower_bound},
                {"generic_rank", c.generic_rank}};
}

CertificateRecord certificate_from(const json& j) {
    CertificateRecord c;
    c.min_rank = j.at("min_rank").get<std::size_t>();
    c.exhaustive = j.at("exhaustive").get<bool>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.witness = witness_from(j.at("witness"));
    c.patterns_checked = j.at("patterns_checked").get<std::size_t>();
    c.lower_bound = j.at("lower_bound").get<std::size_t>();
    c.generic_rank = j.at("generic_rank").get<std::size_t>();
    return c;
}

json sscs_json(const SscsRecord& s) {
    return json{{"dim", s.dim},
                {"k_first", optional_json(s.k_first)},
                {"removed_edges", s.removed_edges},
                {"certified", s.certified},
                {"witness", s.witness ? witness_json(*s.witness) : json(nullptr)}};
}

SscsRecord sscs_from(const std::string& mode, const json& j) {
    SscsRecord s;
    s.mode = mode;
    s.dim = j.at("dim").get<std::size_t>();
    if (!j.at("k_first").is_null()) s.k_first = j.at("k_first").get<std::size_t>();
    s.removed_edges = j.at("removed_edges").get<std::vector<std::string>>();
    s.certified = j.at("certified").get<bool>();
    if (!j.at("witness").is_null()) s.witness = witness_from(j.at("witness"));
    return s;
}

json fixed_json(const FixedRecord& f) {
    return json{{"base_dim", f.base_dim},
                {"augmented_dim", f.augmented_dim},
                {"augmented_exhaustive", f.augmented_exhaustive},
                {"min_rank_equal", f.min_rank_equal},
                {"rule_member", f.rule_member},
                {"member", f.member},
                {"certified", f.certified},
                {"disagreement", f.disagreement},
                {"witness", f.witness ? witness_json(*f.witness) : json(nullptr)}};
}

FixedRecord fixed_from(const std::string& node, const json& j) {
    FixedRecord f;
    f.node = node;
    f.base_dim = j.at("base_dim").get<std::size_t>();
    f.augmented_dim = j.at("augmented_dim").get<std::size_t>();
    f.augmented_exhaustive = j.at("augmented_exhaustive").get<bool>();
    f.min_rank_equal = j.at("min_rank_equal").get<bool>();
    f.rule_member = j.at("rule_member").get<bool>();
    f.member = j.at("member").get<bool>();
    f.certified = j.at("certified").get<bool>();
    f.disagreement = j.at("disagreement").get<bool>();
    if (!j.at("witness").is_null()) f.witness = witness_from(j.at("witness"));
    return f;
}

}  // namespace

std::string certificate_to_json(const CertificateRecord& c) { return certificate_json(c).dump(); }

std::string report_to_json(const AnalysisReport& r, bool pretty) {
    json j;
    j["version"] = r.version;
    j["seed"] = r.seed;
    j["budget"] = r.budget;
    j["graph_shape"] = json{{"kind", r.shape_kind}, {"input_connected", r.input_connected}};
    if (r.layering)
        j["layering"] = json{{"depth", r.layering->depth}, {"layers", r.layering->layers}};
    else
        j["layering"] = nullptr;
    if (r.classification) {
        json roles = json::object(), anchors = json::object(), cond1 = json::array();
        for (const auto& [node, role] : r.classification->roles) roles[node] = role;
        for (const auto& [node, anchor] : r.classification->anchors) anchors[node] = anchor;
        for (const auto& [node, blockers] : r.classification->cond1)
            cond1.push_back(json{{"integrator", node}, {"blockers", blockers}});
        j["classification"] = json{{"roles", roles}, {"anchors", anchors}, {"cond1", cond1}};
    } else {
        j["classification"] = nullptr;
    }
    j["scs_dim"] = r.scs_dim;
    j["cover"] = json{{"size", r.cover.size}, {"stems", r.cover.stems}, {"cycles", r.cover.cycles}};
    json sscs = json::object();
    for (const auto& s : r.sscs) sscs[s.mode] = sscs_json(s);
    j["sscs"] = sscs;
    j["fsc"] = r.fsc;
    json fssc = json::object();
    for (const auto& f : r.fssc) {
        json per_node = json::object();
        for (const auto& n : f.per_node) per_node[n.node] = fixed_json(n);
        fssc[f.mode] = json{{"base_dim", f.base_dim}, {"nodes", f.nodes}, {"per_node", per_node}};
    }
    j["fssc"] = fssc;
    json certs = json::object();
    for (const auto& [name, c] : r.certificates) certs[name] = certificate_json(c);
    j["certificates"] = certs;
    j["discrepancy"] = r.discrepancy;
    j["discrepancy_details"] = r.discrepancy_details;
    if (r.verification)
        j["verification"] = json{{"passed", r.verification->passed},
                                 {"checks", r.verification->checks},
                                 {"failures", r.verification->failures}};
    if (r.symcm_dump) j["symcm_dump"] = *r.symcm_dump;
    j["notes"] = r.notes;
    return pretty ? j.dump(2) : j.dump();
}

AnalysisReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    AnalysisReport r;
    r.version = j.at("version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.budget = j.at("budget").get<std::uint64_t>();
    r.shape_kind = j.at("graph_shape").at("kind").get<std::string>();
    r.input_connected = j.at("graph_shape").at("input_connected").get<bool>();
    if (!j.at("layering").is_null()) {
        LayeringRecord l;
        l.depth = j["layering"].at("depth").get<std::size_t>();
        l.layers = j["layering"].at("layers").get<std::vector<std::vector<std::string>>>();
        r.layering = std::move(l);
    }
    if (!j.at("classification").is_null()) {
        ClassificationRecord c;
        const json& cj = j["classification"];
        for (const auto& [node, role] : cj.at("roles").items()) c.roles.emplace_back(node, role.get<std::string>());
        for (const auto& [node, anchor] : cj.at("anchors").items())
            c.anchors.emplace_back(node, anchor.get<std::string>());
        for (const auto& entry : cj.at("cond1"))
            c.cond1.emplace_back(entry.at("integrator").get<std::string>(),
                                 entry.at("blockers").get<std::vector<std::string>>());
        r.classification = std::move(c);
    }
    r.scs_dim = j.at("scs_dim").get<std::size_t>();
    r.cover.size = j.at("cover").at("size").get<std::size_t>();
    r.cover.stems = j["cover"].at("stems").get<std::vector<std::vector<std::string>>>();
    r.cover.cycles = j["cover"].at("cycles").get<std::vector<std::vector<std::string>>>();
    for (const auto& [mode, s] : j.at("sscs").items()) r.sscs.push_back(sscs_from(mode, s));
    r.fsc = j.at("fsc").get<std::vector<std::string>>();
    for (const auto& [mode, f] : j.at("fssc").items()) {
        FsscRecord rec;
        rec.mode = mode;
        rec.base_dim = f.at("base_dim").get<std::size_t>();
        rec.nodes = f.at("nodes").get<std::vector<std::string>>();
        for (const auto& [node, n] : f.at("per_node").items()) rec.per_node.push_back(fixed_from(node, n));
        r.fssc.push_back(std::move(rec));
    }
    for (const auto& [name, c] : j.at("certificates").items()) r.certificates.emplace_back(name, certificate_from(c));
    r.discrepancy = j.at("discrepancy").get<bool>();
    r.discrepancy_details = j.at("discrepancy_details").get<std::vector<std::string>>();
    if (j.contains("verification")) {
        VerificationRecord v;
        v.passed = j["verification"].at("passed").get<bool>();
        v.checks = j["verification"].at("checks").get<std::vector<std::string>>();
        v.failures = j["verification"].at("failures").get<std::vector<std::string>>();
        r.verification = std::move(v);
    }
    if (j.contains("symcm_dump")) r.symcm_dump = j["symcm_dump"].get<std::vector<std::string>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

// DOT ----------------------------------------------------------------------

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string export_dot(const StructuredGraph& g, bool subgraph, ZeroabilityMode mode) {
    std::vector<bool> dashed(g.edge_count(), false);
    if (subgraph) {
        const SscsResult s = sscs_dim(g, mode);
        for (EdgeIndex e : removed_edges(g, s.k_first)) dashed[e] = true;
    }
    std::ostringstream os;
    os << "digraph sscs {\n  rankdir=TB;\n  node [shape=circle];\n";
    for (NodeIndex l : g.leaders()) os << "  " << quoted(g.label(l)) << " [shape=doublecircle];\n";
    if (validate(g).input_connected) {
        for (const auto& layer : layering(g).layers) {
            os << "  { rank=same;";
            for (NodeIndex v : layer) os << ' ' << quoted(g.label(v)) << ';';
            os << " }\n";
        }
    } else {
        for (NodeIndex v = 0; v < g.node_count(); ++v) os << "  " << quoted(g.label(v)) << ";\n";
    }
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        os << "  " << quoted(g.label(g.edge(e).from)) << " -> " << quoted(g.label(g.edge(e).to));
        if (dashed[e]) os << " [style=dashed]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace sscs
