#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sscs/rational.hpp"

namespace sscs::algebra {

using Exponents = std::vector<std::uint8_t>;

struct Term {
    Exponents exp;
    std::uint32_t degree = 0;
    Rational coef;
};

/// Graded reverse lexicographic comparison: <0, 0, >0.
int grevlex_compare(const Exponents& a, std::uint32_t da, const Exponents& b, std::uint32_t db);

/**
 * Sparse multivariate polynomial over the rationals with a fixed number of
 * variables. Terms are kept sorted in decreasing grevlex order with no zero
 * coefficients.
 */
class Polynomial {
public:
    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t var);
    /// Builds from (exponent vector, coefficient) pairs in any order.
    static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

    std::size_t nvars() const noexcept { return nvars_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.size() == 1 && terms_[0].degree == 0; }
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    const Term& leading() const { return terms_.front(); }

    std::uint32_t total_degree() const;
    std::uint32_t degree_in(std::size_t var) const;
    std::vector<std::size_t> variables() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;

    /// this - c * x^shift * g, the reduction step.
    Polynomial minus_scaled(const Rational& c, const Exponents& shift, std::uint32_t shift_degree,
                            const Polynomial& g) const;
    Polynomial scaled(const Rational& c) const;

    /// Divides out the largest monomial dividing every term.
    Polynomial without_monomial_content() const;
    Polynomial monic() const;

    /// Value with every variable assigned.
    Rational evaluate(std::span<const Rational> values) const;

    /// Coefficients (L, R) of p = L*x + R after substituting every other
    /// variable. Requires degree_in(x) <= 1 and those variables assigned.
    std::pair<Rational, Rational> linear_in(std::size_t x, std::span<const std::optional<Rational>> values) const;

    /// Renames variables: new index of old variable v is map[v].
    Polynomial remapped(const std::vector<std::size_t>& map, std::size_t new_nvars) const;

    bool operator==(const Polynomial& o) const;

    std::string to_string() const;

private:
    std::size_t nvars_;
    std::vector<Term> terms_;
};

/// Determinant by cofactor expansion; intended for small minors.
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m);

enum class RootVerdict {
    NoNonzeroRoot,   ///< certificate: 1 lies in the ideal saturated by all variables
    HasComplexRoot,  ///< a Groebner basis was completed without reaching 1
    Unknown,         ///< work budget exhausted
};

struct GroebnerStats {
    std::size_t reductions = 0;
    std::size_t basis_size = 0;
};

/**
 * Decides whether the system {p = 0 : p in system} has a common root with all
 * variables nonzero over the complex numbers. A NoNonzeroRoot answer is a
 * proof that no real assignment with nonzero parameters solves the system.
 *
 * Runs Buchberger's algorithm (grevlex, normal selection) first on the
 * content-stripped system, then with the extra generator t*x1*...*xn - 1.
 */
RootVerdict nonzero_root_status(const std::vector<Polynomial>& system, std::size_t max_reductions,
                                GroebnerStats* stats = nullptr);

}  // namespace sscs::algebra
