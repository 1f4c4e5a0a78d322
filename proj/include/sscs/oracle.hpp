#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sscs/graph.hpp"
#include "sscs/polynomial.hpp"
#include "sscs/rational.hpp"
#include "sscs/symcm.hpp"

namespace sscs {

/// Rank over the rationals by fraction-free (Bareiss) elimination.
std::size_t rank_exact(const RationalMatrix& m);

/// Maximum exact rank over `trials` random nonzero integer assignments.
std::size_t max_rank(const SymCM& m, std::size_t trials, std::uint64_t seed);

/// Brute-force check of one (node, step) row slice against enumerated stems,
/// for every input.
bool swp_crosscheck(const StructuredGraph& g, NodeIndex i, std::size_t k);
bool swp_crosscheck(const StructuredGraph& g, const SymCM& m, NodeIndex i, std::size_t k);

struct OracleBudget {
    std::size_t witness_attempts = 48;
    std::size_t groebner_reductions = 4000;
    std::size_t max_minors = 512;
    std::size_t max_joint_targets = 64;
    std::size_t random_trials = 3;

    /// Scales every limit from a single CLI-style number (default 4000).
    static OracleBudget from_scalar(std::size_t budget);
};

/// Grid used for free parameters while searching for witnesses.
const std::vector<Rational>& witness_grid();

/// A determinantal system: every (target_rank+1)-minor of the listed cells
/// vanishes. For target_rank = 0 this is "all listed entries are zero".
struct VanishingPattern {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    std::size_t target_rank = 0;
};

struct MinRankCertificate {
    std::size_t min_rank = 0;
    std::size_t lower_bound = 0;
    std::size_t generic_rank = 0;
    ParamAssignment witness;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    std::size_t patterns_checked = 0;
    std::vector<VanishingPattern> infeasible_patterns;
};

/**
 * Minimum rank of the controllability matrix over nonzero parameters.
 *
 * The matrix splits into blocks with disjoint row and column support. For
 * each block the search walks target ranks upward: a witness assignment
 * settles the block minimum, and a Groebner certificate rules a target out.
 * Blocks are then solved jointly. `exhaustive` is set exactly when the
 * proven lower bound meets the witnessed rank.
 */
MinRankCertificate min_rank(const SymCM& m, std::uint64_t seed, const OracleBudget& budget = {});

/// Tries to find nonzero parameters that make every polynomial in `system`
/// vanish. Parameters not appearing in the system are set to 1.
std::optional<ParamAssignment> find_vanishing_assignment(const std::vector<algebra::Polynomial>& system,
                                                         std::size_t edge_count, std::mt19937_64& rng,
                                                         std::size_t attempts);

enum class SpanVerdict { AlwaysInSpan, NotAlwaysInSpan, Unknown };

struct SpanCheck {
    SpanVerdict verdict = SpanVerdict::Unknown;
    /// Parameters at which the augmented matrix has larger rank.
    std::optional<ParamAssignment> witness;
    /// Column whose only non-Zero entry is the row and never vanishes.
    std::optional<std::size_t> proof_column;
};

/**
 * Is the basis vector of `row` in the column space of `base` at every
 * nonzero assignment? `augmented` is the matrix with that row's node added
 * as a leader (same edges). `probes` are tried before random draws.
 */
SpanCheck basis_vector_in_span(const SymCM& base, const SymCM& augmented, std::size_t row,
                               const std::vector<ParamAssignment>& probes, std::uint64_t seed,
                               const OracleBudget& budget = {});

/// Cell polynomial over edge variables.
algebra::Polynomial to_polynomial(const StemPoly& p, std::size_t edge_count);

}  // namespace sscs
