#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sscs/graph.hpp"
#include "sscs/rational.hpp"

namespace sscs {

/// Weight product of one stem: the edges in path order.
struct Monomial {
    std::vector<EdgeIndex> edges;
    int coefficient = 1;

    bool operator==(const Monomial&) const = default;
};

enum class EntryClass { Zero, SingleTerm, MultiTerm };

std::string_view to_string(EntryClass c);

/// Sum of weight products. Monomials are pairwise distinct by edge set.
class StemPoly {
public:
    StemPoly() = default;
    explicit StemPoly(std::vector<Monomial> monomials) : monomials_(std::move(monomials)) {}

    /// The empty product (a leader's own entry at step 0).
    static StemPoly one() { return StemPoly({Monomial{}}); }

    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
    std::size_t size() const noexcept { return monomials_.size(); }
    bool empty() const noexcept { return monomials_.empty(); }

    /// Equality as a set of edge sets, ignoring monomial order.
    bool same_terms(const StemPoly& other) const;

    Rational evaluate(const ParamAssignment& p) const;

private:
    std::vector<Monomial> monomials_;
};

EntryClass classify_entry(const StemPoly& p);

/**
 * Symbolic controllability matrix [B, AB, ..., A^{n-1}B].
 *
 * Rows are nodes in declaration order. Column (input j, step k) sits at
 * j * n + k, so columns run input-major in leader order. Columns past the
 * graph depth are kept as Zero so the shape is always n x n*m.
 */
class SymCM {
public:
    SymCM(std::size_t nodes, std::size_t inputs, std::size_t edges);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return rows_ * inputs_; }
    std::size_t inputs() const noexcept { return inputs_; }
    std::size_t edge_count() const noexcept { return edges_; }

    std::size_t column(std::size_t input, std::size_t step) const { return input * rows_ + step; }
    std::size_t input_of(std::size_t col) const { return col / rows_; }
    std::size_t step_of(std::size_t col) const { return col % rows_; }

    const StemPoly& entry(std::size_t row, std::size_t col) const { return cells_.at(row * cols() + col); }
    StemPoly& entry(std::size_t row, std::size_t col) { return cells_.at(row * cols() + col); }

    bool column_is_zero(std::size_t col) const;
    std::size_t nonzero_column_count() const;

    /// Set when built from a single-leader HDAG: every row has at most one
    /// non-Zero entry and the rank equals the number of non-Zero columns.
    bool single_leader_hdag() const noexcept { return single_leader_hdag_; }
    void set_single_leader_hdag(bool v) noexcept { single_leader_hdag_ = v; }

private:
    std::size_t rows_;
    std::size_t inputs_;
    std::size_t edges_;
    bool single_leader_hdag_ = false;
    std::vector<StemPoly> cells_;
};

/// Layer-order dynamic program over stems. Throws PreconditionError on a
/// cyclic graph.
SymCM build_symcm(const StructuredGraph& g);

/// Exact evaluation at the given parameters.
RationalMatrix evaluate(const SymCM& m, const ParamAssignment& p);

/// Zeroes every column whose step is >= k_first; identity for nullopt.
SymCM modified_symcm(const SymCM& m, std::optional<std::size_t> k_first);

/// Uniform nonzero integers in [-bound, -1] U [1, bound].
ParamAssignment random_assignment(std::size_t edge_count, std::mt19937_64& rng, int bound = 1000);

class UnstableRankError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rank at random parameters, confirmed by a second independent draw
/// (up to five rounds). Single-leader HDAG matrices are also checked
/// against their non-Zero column count.
std::size_t generic_rank(const SymCM& m, std::uint64_t seed = 0);

/// One line per non-Zero cell:
/// `row=<id> input=<id> step=<k> terms=<t> poly=<+a_{u,v}·...>`.
std::string dump(const SymCM& m, const StructuredGraph& g);

std::string format_monomial(const Monomial& mono, const StructuredGraph& g);

}  // namespace sscs
