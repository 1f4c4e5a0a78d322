#include "sscs/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace sscs {

using algebra::Polynomial;

std::size_t rank_exact(const RationalMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        Integer scale = 1;
        for (std::size_t c = 0; c < cols; ++c) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m.at(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = m.at(r, c).get_num() * (scale / m.at(r, c).get_den());
    }

    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[i][j] * a[rank][c] - a[i][c] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

std::size_t max_rank(const SymCM& m, std::size_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::size_t best = 0;
    for (std::size_t t = 0; t < trials; ++t)
        best = std::max(best, rank_exact(evaluate(m, random_assignment(m.edge_count(), rng))));
    return best;
}

bool swp_crosscheck(const StructuredGraph& g, const SymCM& m, NodeIndex i, std::size_t k) {
    const auto stems = enumerate_stems(g, i, k);
    for (std::size_t j = 0; j < g.leader_count(); ++j) {
        std::vector<Monomial> terms;
        for (const Stem& s : stems) {
            if (s.nodes.front() != g.leaders()[j]) continue;
            Monomial mono;
            for (std::size_t t = 0; t + 1 < s.nodes.size(); ++t)
                mono.edges.push_back(*g.find_edge(s.nodes[t], s.nodes[t + 1]));
            terms.push_back(std::move(mono));
        }
        StemPoly brute(std::move(terms));
        const StemPoly empty;
        const StemPoly& built = k < m.rows() ? m.entry(i, m.column(j, k)) : empty;
        if (!built.same_terms(brute)) return false;
    }
    return true;
}

bool swp_crosscheck(const StructuredGraph& g, NodeIndex i, std::size_t k) {
    return swp_crosscheck(g, build_symcm(g), i, k);
}

OracleBudget OracleBudget::from_scalar(std::size_t budget) {
    OracleBudget b;
    b.groebner_reductions = budget;
    b.witness_attempts = std::max<std::size_t>(16, budget / 80);
    b.max_minors = std::max<std::size_t>(64, budget / 8);
    b.max_joint_targets = std::max<std::size_t>(16, budget / 64);
    return b;
}

const std::vector<Rational>& witness_grid() {
    static const std::vector<Rational> grid = {Rational(1),     Rational(-1),    Rational(2),    Rational(-2),
                                               Rational(3),     Rational(-3),    Rational(1, 2), Rational(-1, 2),
                                               Rational(1, 3),  Rational(-1, 3)};
    return grid;
}

Polynomial to_polynomial(const StemPoly& p, std::size_t edge_count) {
    std::vector<algebra::Term> terms;
    for (const auto& mono : p.monomials()) {
        algebra::Exponents e(edge_count, 0);
        for (EdgeIndex x : mono.edges) ++e.at(x);
        terms.push_back({std::move(e), 0, Rational(mono.coefficient)});
    }
    return Polynomial::from_terms(edge_count, std::move(terms));
}

namespace {

ParamAssignment to_assignment(const std::vector<std::optional<Rational>>& values) {
    ParamAssignment p(values.size());
    for (EdgeIndex e = 0; e < values.size(); ++e) p.set(e, values[e] ? *values[e] : Rational(1));
    return p;
}

bool all_vanish(const std::vector<Polynomial>& polys, const std::vector<Rational>& point) {
    return std::all_of(polys.begin(), polys.end(), [&](const Polynomial& p) { return p.evaluate(point) == 0; });
}

std::optional<ParamAssignment> grid_search(const std::vector<Polynomial>& polys, const std::vector<std::size_t>& vars,
                                           std::size_t edge_count) {
    const auto& grid = witness_grid();
    std::vector<Rational> point(edge_count, Rational(1));
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
        for (std::size_t i = 0; i < vars.size(); ++i) point[vars[i]] = grid[idx[i]];
        if (all_vanish(polys, point)) {
            ParamAssignment p(edge_count);
            for (EdgeIndex e = 0; e < edge_count; ++e) p.set(e, point[e]);
            return p;
        }
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == grid.size()) idx[pos++] = 0;
        if (pos == idx.size()) return std::nullopt;
    }
}

}  // namespace

std::optional<ParamAssignment> find_vanishing_assignment(const std::vector<Polynomial>& system,
                                                         std::size_t edge_count, std::mt19937_64& rng,
                                                         std::size_t attempts) {
    std::vector<Polynomial> polys;
    for (const auto& p : system) {
        Polynomial q = p.without_monomial_content();
        if (q.is_zero()) continue;
        if (q.is_monomial()) return std::nullopt;
        polys.push_back(std::move(q));
    }
    if (polys.empty()) return ParamAssignment::uniform(edge_count, Rational(1));

    std::vector<bool> in_system(edge_count, false);
    for (const auto& p : polys)
        for (auto v : p.variables()) in_system[v] = true;
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < edge_count; ++v)
        if (in_system[v]) vars.push_back(v);
    if (vars.size() <= 3) return grid_search(polys, vars, edge_count);

    const auto& grid = witness_grid();
    std::uniform_int_distribution<std::size_t> pick_grid(0, grid.size() - 1);
    std::uniform_int_distribution<int> pick_int(1, 97);
    std::bernoulli_distribution coin(0.5);

    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        // Low-degree polynomials first so that solved parameters feed later ones.
        std::vector<std::size_t> order(polys.size());
        std::iota(order.begin(), order.end(), 0);
        std::vector<std::uint64_t> key(polys.size());
        for (auto& k : key) k = rng();
        if (attempt % 4 == 3) {
            std::shuffle(order.begin(), order.end(), rng);
        } else {
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                auto da = polys[a].total_degree(), db = polys[b].total_degree();
                if (da != db) return da < db;
                return key[a] < key[b];
            });
        }

        std::vector<std::optional<std::size_t>> isolate(polys.size());
        std::vector<bool> used(edge_count, false), chosen(edge_count, false);
        for (std::size_t i : order) {
            std::vector<std::size_t> cands;
            for (auto v : polys[i].variables())
                if (!used[v] && polys[i].degree_in(v) == 1) cands.push_back(v);
            if (!cands.empty()) {
                std::size_t v = attempt == 0 ? cands.back() : cands[rng() % cands.size()];
                isolate[i] = v;
                chosen[v] = true;
            }
            for (auto v : polys[i].variables()) used[v] = true;
        }

        auto draw = [&]() -> Rational {
            if (attempt == 0) return Rational(1);
            if (attempt < attempts / 2) return grid[pick_grid(rng)];
            int v = pick_int(rng);
            return coin(rng) ? Rational(-v) : Rational(v);
        };
        std::vector<std::optional<Rational>> values(edge_count);
        for (std::size_t v = 0; v < edge_count; ++v) {
            if (!in_system[v]) values[v] = Rational(1);
            else if (!chosen[v]) values[v] = draw();
        }

        bool failed = false;
        for (std::size_t i : order) {
            if (!isolate[i]) continue;
            auto [lin, rest] = polys[i].linear_in(*isolate[i], values);
            if (lin != 0) {
                Rational x = -rest / lin;
                if (x == 0) {
                    failed = true;
                    break;
                }
                values[*isolate[i]] = x;
            } else if (rest == 0) {
                values[*isolate[i]] = grid[pick_grid(rng)];
            } else {
                failed = true;
                break;
            }
        }
        if (failed) continue;
        std::vector<Rational> point(edge_count);
        for (std::size_t v = 0; v < edge_count; ++v) point[v] = *values[v];
        if (all_vanish(polys, point)) return to_assignment(values);
    }
    return std::nullopt;
}

namespace {

struct Block {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    std::size_t generic = 0;
    std::size_t lower = 0;
    std::size_t upper = 0;
    std::map<std::size_t, std::optional<std::vector<Polynomial>>> minors;  // by minor size
};

std::vector<Block> split_blocks(const SymCM& m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::size_t> parent(R + C);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<bool> row_used(R, false), col_used(C, false);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c)
            if (!m.entry(r, c).empty()) {
                parent[find(r)] = find(R + c);
                row_used[r] = col_used[c] = true;
            }
    std::map<std::size_t, Block> by_root;
    for (std::size_t c = 0; c < C; ++c)
        if (col_used[c]) by_root[find(R + c)].cols.push_back(c);
    for (std::size_t r = 0; r < R; ++r)
        if (row_used[r]) by_root[find(r)].rows.push_back(r);
    std::vector<Block> blocks;
    for (auto& [_, b] : by_root) blocks.push_back(std::move(b));
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.cols < b.cols; });
    return blocks;
}

std::size_t block_rank(const RationalMatrix& full, const Block& b) {
    RationalMatrix sub(b.rows.size(), b.cols.size());
    for (std::size_t i = 0; i < b.rows.size(); ++i)
        for (std::size_t j = 0; j < b.cols.size(); ++j) sub.at(i, j) = full.at(b.rows[i], b.cols[j]);
    return rank_exact(sub);
}

std::size_t choose(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

class MinRankSearch {
public:
    MinRankSearch(const SymCM& m, std::uint64_t seed, const OracleBudget& budget)
        : m_(m), budget_(budget), rng_(seed), cells_(m.rows() * m.cols(), Polynomial(m.edge_count())) {
        cert_.seed = seed;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!m.entry(r, c).empty()) cells_[r * m.cols() + c] = to_polynomial(m.entry(r, c), m.edge_count());
        blocks_ = split_blocks(m);
    }

    MinRankCertificate run() {
        sample_generic();
        for (auto& b : blocks_) solve_block(b);
        std::size_t lower = 0;
        for (const auto& b : blocks_) lower += b.lower;
        lower = joint_search(lower);
        cert_.lower_bound = lower;
        cert_.exhaustive = lower == cert_.min_rank;
        if (cert_.min_rank < lower)
            throw std::logic_error("min_rank: witness rank " + std::to_string(cert_.min_rank) +
                                   " below proven bound " + std::to_string(lower));
        return std::move(cert_);
    }

private:
    const Polynomial& cell(std::size_t r, std::size_t c) const { return cells_[r * m_.cols() + c]; }

    void consider(const ParamAssignment& p, const RationalMatrix& value) {
        std::size_t r = rank_exact(value);
        if (!have_witness_ || r < cert_.min_rank) {
            cert_.min_rank = r;
            cert_.witness = p;
            have_witness_ = true;
        }
    }

    void sample_generic() {
        for (auto& b : blocks_) b.generic = 0;
        for (std::size_t t = 0; t < std::max<std::size_t>(1, budget_.random_trials); ++t) {
            ParamAssignment p = random_assignment(m_.edge_count(), rng_);
            RationalMatrix value = evaluate(m_, p);
            cert_.generic_rank = std::max(cert_.generic_rank, rank_exact(value));
            for (auto& b : blocks_) b.generic = std::max(b.generic, block_rank(value, b));
            consider(p, value);
        }
        for (auto& b : blocks_) b.upper = b.generic;
        if (blocks_.empty()) {
            cert_.witness = ParamAssignment::uniform(m_.edge_count(), Rational(1));
            have_witness_ = true;
        }
    }

    // All (size x size) minors of the block; nullopt when over the cap.
    const std::optional<std::vector<Polynomial>>& minors(Block& b, std::size_t size) {
        auto it = b.minors.find(size);
        if (it != b.minors.end()) return it->second;
        std::optional<std::vector<Polynomial>> out;
        if (choose(b.rows.size(), size) * choose(b.cols.size(), size) <= budget_.max_minors) {
            out.emplace();
            subsets(b.rows.size(), size, [&](const std::vector<std::size_t>& rs) {
                subsets(b.cols.size(), size, [&](const std::vector<std::size_t>& cs) {
                    std::vector<std::vector<Polynomial>> sub;
                    for (auto r : rs) {
                        std::vector<Polynomial> row;
                        for (auto c : cs) row.push_back(cell(b.rows[r], b.cols[c]));
                        sub.push_back(std::move(row));
                    }
                    Polynomial d = algebra::determinant(sub);
                    if (!d.is_zero()) out->push_back(std::move(d));
                });
            });
        }
        return b.minors.emplace(size, std::move(out)).first->second;
    }

    VanishingPattern pattern_of(const Block& b, std::size_t target) const {
        VanishingPattern p;
        p.target_rank = target;
        for (auto r : b.rows)
            for (auto c : b.cols)
                if (!m_.entry(r, c).empty()) p.cells.emplace_back(r, c);
        return p;
    }

    bool proven_impossible(const std::vector<Polynomial>& system) {
        return algebra::nonzero_root_status(system, budget_.groebner_reductions) ==
               algebra::RootVerdict::NoNonzeroRoot;
    }

    void solve_block(Block& b) {
        for (std::size_t r = 0; r < b.generic; ++r) {
            const auto& sys = minors(b, r + 1);
            if (!sys) return;
            ++cert_.patterns_checked;
            if (auto w = find_vanishing_assignment(*sys, m_.edge_count(), rng_, budget_.witness_attempts)) {
                RationalMatrix value = evaluate(m_, *w);
                b.upper = std::min(b.upper, block_rank(value, b));
                consider(*w, value);
                return;
            }
            if (proven_impossible(*sys)) {
                b.lower = std::max(b.lower, r + 1);
                cert_.infeasible_patterns.push_back(pattern_of(b, r));
            }
        }
    }

    // Raises the lower bound while every target vector of the current total
    // is proven impossible; stops once a witness reaches the total.
    std::size_t joint_search(std::size_t lower) {
        std::size_t tried = 0;
        while (lower < cert_.min_rank) {
            bool all_proven = true;
            bool reached = false;
            std::vector<std::size_t> target(blocks_.size());
            std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t i, std::size_t left) {
                if (reached || tried >= budget_.max_joint_targets) {
                    all_proven = all_proven && reached;
                    return;
                }
                if (i == blocks_.size()) {
                    if (left != 0) return;
                    ++tried;
                    ++cert_.patterns_checked;
                    std::vector<Polynomial> sys;
                    for (std::size_t k = 0; k < blocks_.size(); ++k) {
                        if (target[k] >= blocks_[k].generic) continue;
                        const auto& ms = minors(blocks_[k], target[k] + 1);
                        if (!ms) {
                            all_proven = false;
                            return;
                        }
                        sys.insert(sys.end(), ms->begin(), ms->end());
                    }
                    if (auto w = find_vanishing_assignment(sys, m_.edge_count(), rng_, budget_.witness_attempts)) {
                        consider(*w, evaluate(m_, *w));
                        reached = cert_.min_rank <= lower;
                        return;
                    }
                    if (!proven_impossible(sys)) all_proven = false;
                    return;
                }
                const Block& b = blocks_[i];
                for (std::size_t t = b.lower; t <= b.generic && t <= left; ++t) {
                    target[i] = t;
                    visit(i + 1, left - t);
                }
            };
            visit(0, lower);
            if (reached || !all_proven) break;
            ++lower;
        }
        return lower;
    }

    const SymCM& m_;
    OracleBudget budget_;
    std::mt19937_64 rng_;
    std::vector<Polynomial> cells_;
    std::vector<Block> blocks_;
    MinRankCertificate cert_;
    bool have_witness_ = false;
};

}  // namespace

MinRankCertificate min_rank(const SymCM& m, std::uint64_t seed, const OracleBudget& budget) {
    return MinRankSearch(m, seed, budget).run();
}

}  // namespace sscs

namespace sscs {

SpanCheck basis_vector_in_span(const SymCM& base, const SymCM& augmented, std::size_t row,
                               const std::vector<ParamAssignment>& probes, std::uint64_t seed,
                               const OracleBudget& budget) {
    SpanCheck out;
    std::mt19937_64 rng(seed);
    auto try_point = [&](const ParamAssignment& p) {
        if (rank_exact(evaluate(augmented, p)) > rank_exact(evaluate(base, p))) {
            out.verdict = SpanVerdict::NotAlwaysInSpan;
            out.witness = p;
            return true;
        }
        return false;
    };
    for (const auto& p : probes)
        if (try_point(p)) return out;
    for (std::size_t t = 0; t < std::max<std::size_t>(1, budget.random_trials); ++t)
        if (try_point(random_assignment(base.edge_count(), rng))) return out;

    for (std::size_t c = 0; c < base.cols(); ++c) {
        const StemPoly& own = base.entry(row, c);
        if (own.empty()) continue;
        bool isolated = true;
        for (std::size_t r = 0; r < base.rows() && isolated; ++r)
            if (r != row && !base.entry(r, c).empty()) isolated = false;
        if (!isolated) continue;
        if (own.size() == 1 ||
            algebra::nonzero_root_status({to_polynomial(own, base.edge_count())}, budget.groebner_reductions) ==
                algebra::RootVerdict::NoNonzeroRoot) {
            out.verdict = SpanVerdict::AlwaysInSpan;
            out.proof_column = c;
            return out;
        }
    }
    return out;
}

}  // namespace sscs
