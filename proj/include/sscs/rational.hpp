#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sscs/graph.hpp"

namespace sscs {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);
/// Accepts "p" or "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return cells_.at(r * cols_ + c); }
    const Rational& at(std::size_t r, std::size_t c) const { return cells_.at(r * cols_ + c); }

    bool operator==(const RationalMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> cells_;
};

/// Nonzero value per edge of a graph. Edges are identified by index.
class ParamAssignment {
public:
    ParamAssignment() = default;
    explicit ParamAssignment(std::size_t edge_count) : values_(edge_count) {}

    std::size_t edge_count() const noexcept { return values_.size(); }

    /// Throws std::invalid_argument on a zero value.
    void set(EdgeIndex e, Rational value);
    const std::optional<Rational>& get(EdgeIndex e) const { return values_.at(e); }
    bool complete() const;

    /// Throws PreconditionError naming the first unassigned edge of `g`.
    void require_complete(const StructuredGraph& g) const;

    static ParamAssignment uniform(std::size_t edge_count, const Rational& value);

private:
    std::vector<std::optional<Rational>> values_;
};

}  // namespace sscs
