#include "sscs/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sscs::algebra {

namespace {

constexpr std::size_t kMaxTerms = 20000;

std::uint32_t degree_of(const Exponents& e) {
    std::uint32_t d = 0;
    for (auto x : e) d += x;
    return d;
}

Exponents multiply(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        unsigned s = unsigned(a[i]) + unsigned(b[i]);
        if (s > std::numeric_limits<std::uint8_t>::max()) throw std::overflow_error("exponent overflow");
        out[i] = static_cast<std::uint8_t>(s);
    }
    return out;
}

bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

Exponents quotient(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::uint8_t>(a[i] - b[i]);
    return out;
}

bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

}  // namespace

int grevlex_compare(const Exponents& a, std::uint32_t da, const Exponents& b, std::uint32_t db) {
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_.push_back({Exponents(nvars, 0), 0, c});
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t var) {
    Polynomial p(nvars);
    Exponents e(nvars, 0);
    e.at(var) = 1;
    p.terms_.push_back({std::move(e), 1, Rational(1)});
    return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
    for (auto& t : terms) {
        if (t.exp.size() != nvars) throw std::invalid_argument("exponent vector length mismatch");
        t.degree = degree_of(t.exp);
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return grevlex_compare(a.exp, a.degree, b.exp, b.degree) > 0;
    });
    Polynomial p(nvars);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
            p.terms_.back().coef += t.coef;
            if (p.terms_.back().coef == 0) p.terms_.pop_back();
        } else if (t.coef != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

std::uint32_t Polynomial::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.degree);
    return d;
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max<std::uint32_t>(d, t.exp[var]);
    return d;
}

std::vector<std::size_t> Polynomial::variables() const {
    std::vector<bool> used(nvars_, false);
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < nvars_; ++i)
            if (t.exp[i]) used[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nvars_; ++i)
        if (used[i]) out.push_back(i);
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial out(nvars_);
    out.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        int cmp;
        if (i == terms_.size()) cmp = -1;
        else if (j == o.terms_.size()) cmp = 1;
        else cmp = grevlex_compare(terms_[i].exp, terms_[i].degree, o.terms_[j].exp, o.terms_[j].degree);
        if (cmp > 0) {
            out.terms_.push_back(terms_[i++]);
        } else if (cmp < 0) {
            out.terms_.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].coef + o.terms_[j].coef;
            if (c != 0) out.terms_.push_back({terms_[i].exp, terms_[i].degree, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial out(nvars_);
    if (c == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.coef *= c;
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial acc(nvars_);
    for (const auto& t : o.terms_) acc = acc.minus_scaled(-t.coef, t.exp, t.degree, *this);
    return acc;
}

Polynomial Polynomial::minus_scaled(const Rational& c, const Exponents& shift, std::uint32_t shift_degree,
                                    const Polynomial& g) const {
    Polynomial out(nvars_);
    out.terms_.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    Exponents shifted;
    while (i < terms_.size() || j < g.terms_.size()) {
        int cmp;
        if (j < g.terms_.size()) shifted = multiply(g.terms_[j].exp, shift);
        std::uint32_t sd = j < g.terms_.size() ? g.terms_[j].degree + shift_degree : 0;
        if (i == terms_.size()) cmp = -1;
        else if (j == g.terms_.size()) cmp = 1;
        else cmp = grevlex_compare(terms_[i].exp, terms_[i].degree, shifted, sd);
        if (cmp > 0) {
            out.terms_.push_back(terms_[i++]);
        } else if (cmp < 0) {
            out.terms_.push_back({std::move(shifted), sd, -c * g.terms_[j].coef});
            ++j;
        } else {
            Rational v = terms_[i].coef - c * g.terms_[j].coef;
            if (v != 0) out.terms_.push_back({terms_[i].exp, terms_[i].degree, std::move(v)});
            ++i;
            ++j;
        }
    }
    if (out.terms_.size() > kMaxTerms) throw std::length_error("polynomial too large");
    return out;
}

Polynomial Polynomial::without_monomial_content() const {
    if (terms_.empty()) return *this;
    Exponents common = terms_.front().exp;
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < nvars_; ++i) common[i] = std::min(common[i], t.exp[i]);
    std::uint32_t cd = degree_of(common);
    if (cd == 0) return *this;
    Polynomial out(nvars_);
    out.terms_ = terms_;
    for (auto& t : out.terms_) {
        t.exp = quotient(t.exp, common);
        t.degree -= cd;
    }
    // Dividing every term by the same monomial can reorder terms under grevlex.
    return from_terms(nvars_, std::move(out.terms_));
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    return scaled(1 / terms_.front().coef);
}

Rational Polynomial::evaluate(std::span<const Rational> values) const {
    Rational sum = 0;
    for (const auto& t : terms_) {
        Rational v = t.coef;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < t.exp[i]; ++k) v *= values[i];
        sum += v;
    }
    return sum;
}

std::pair<Rational, Rational> Polynomial::linear_in(std::size_t x,
                                                    std::span<const std::optional<Rational>> values) const {
    Rational lin = 0, rest = 0;
    for (const auto& t : terms_) {
        Rational v = t.coef;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (i == x || t.exp[i] == 0) continue;
            if (!values[i]) throw std::logic_error("linear_in: unassigned variable");
            for (unsigned k = 0; k < t.exp[i]; ++k) v *= *values[i];
        }
        if (t.exp[x] == 0) rest += v;
        else if (t.exp[x] == 1) lin += v;
        else throw std::logic_error("linear_in: variable is not linear");
    }
    return {lin, rest};
}

Polynomial Polynomial::remapped(const std::vector<std::size_t>& map, std::size_t new_nvars) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents e(new_nvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (t.exp[i]) e.at(map.at(i)) = t.exp[i];
        out.push_back({std::move(e), 0, t.coef});
    }
    return from_terms(new_nvars, std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exp != o.terms_[i].exp || terms_[i].coef != o.terms_[i].coef) return false;
    return true;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        bool neg = t.coef < 0;
        Rational mag = neg ? Rational(-t.coef) : t.coef;
        os << (neg ? "-" : (first ? "" : "+"));
        bool unit = mag == 1;
        if (!unit || t.degree == 0) os << sscs::to_string(mag);
        bool sep = !unit;
        for (std::size_t i = 0; i < nvars_; ++i) {
            for (unsigned k = 0; k < t.exp[i]; ++k) {
                os << (sep ? "*" : "") << "x" << i;
                sep = true;
            }
        }
        first = false;
    }
    return os.str();
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("empty matrix");
    const std::size_t nv = m[0][0].nvars();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Polynomial acc(nv);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<Polynomial>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            sub.push_back(std::move(row));
        }
        Polynomial term = m[0][c] * determinant(sub);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

namespace {

enum class Outcome { FoundOne, Complete, OutOfBudget };

// Buchberger with the product and chain criteria. Every new basis element is
// stripped of its monomial content, which is sound because all variables
// are nonzero on the solutions of interest.
Outcome buchberger(std::vector<Polynomial> gens, std::size_t budget, GroebnerStats& stats) {
    std::vector<Polynomial> basis;
    std::vector<std::pair<std::size_t, std::size_t>> pending;
    std::vector<std::vector<bool>> done;

    auto reduce = [&](Polynomial p) {
        Polynomial rem(p.nvars());
        while (!p.is_zero()) {
            const Term& lt = p.leading();
            bool reduced = false;
            for (const auto& g : basis) {
                const Term& gl = g.leading();
                if (!divides(gl.exp, lt.exp)) continue;
                p = p.minus_scaled(lt.coef / gl.coef, quotient(lt.exp, gl.exp), lt.degree - gl.degree, g);
                reduced = true;
                break;
            }
            if (!reduced) {
                rem = rem + Polynomial::from_terms(p.nvars(), {lt});
                p = p - Polynomial::from_terms(p.nvars(), {lt});
            }
        }
        return rem;
    };

    auto insert = [&](Polynomial p) -> bool {
        p = p.without_monomial_content().monic();
        if (p.is_zero()) return false;
        if (p.is_constant()) return true;
        std::size_t k = basis.size();
        basis.push_back(std::move(p));
        for (auto& row : done) row.push_back(false);
        done.emplace_back(basis.size(), false);
        for (std::size_t i = 0; i < k; ++i) pending.emplace_back(i, k);
        return false;
    };

    for (auto& g : gens) {
        Polynomial r = reduce(g);
        if (insert(std::move(r))) return Outcome::FoundOne;
    }

    while (!pending.empty()) {
        auto best = std::min_element(pending.begin(), pending.end(), [&](const auto& a, const auto& b) {
            auto la = lcm(basis[a.first].leading().exp, basis[a.second].leading().exp);
            auto lb = lcm(basis[b.first].leading().exp, basis[b.second].leading().exp);
            return grevlex_compare(la, degree_of(la), lb, degree_of(lb)) < 0;
        });
        auto [i, j] = *best;
        pending.erase(best);
        done[i][j] = done[j][i] = true;

        const Term& li = basis[i].leading();
        const Term& lj = basis[j].leading();
        if (coprime(li.exp, lj.exp)) continue;
        Exponents l = lcm(li.exp, lj.exp);
        bool chain = false;
        for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
            if (k == i || k == j || !divides(basis[k].leading().exp, l)) continue;
            chain = done[i][k] && done[j][k];
        }
        if (chain) continue;

        if (++stats.reductions > budget) return Outcome::OutOfBudget;
        std::uint32_t dl = degree_of(l);
        Polynomial spoly = Polynomial(basis[i].nvars())
                               .minus_scaled(-1 / li.coef, quotient(l, li.exp), dl - li.degree, basis[i])
                               .minus_scaled(1 / lj.coef, quotient(l, lj.exp), dl - lj.degree, basis[j]);
        Polynomial r = reduce(std::move(spoly));
        if (insert(std::move(r))) return Outcome::FoundOne;
        stats.basis_size = basis.size();
    }
    return Outcome::Complete;
}

}  // namespace

RootVerdict nonzero_root_status(const std::vector<Polynomial>& system, std::size_t max_reductions,
                                GroebnerStats* stats) {
    GroebnerStats local;
    GroebnerStats& st = stats ? *stats : local;
    if (system.empty()) return RootVerdict::HasComplexRoot;

    const std::size_t nv = system.front().nvars();
    std::vector<bool> used(nv, false);
    for (const auto& p : system)
        for (auto v : p.variables()) used[v] = true;
    std::vector<std::size_t> map(nv, 0);
    std::size_t compact = 0;
    for (std::size_t v = 0; v < nv; ++v)
        if (used[v]) map[v] = compact++;

    std::vector<Polynomial> gens;
    for (const auto& p : system) {
        Polynomial q = p.remapped(map, compact).without_monomial_content();
        if (q.is_zero()) continue;
        if (q.is_monomial()) return RootVerdict::NoNonzeroRoot;
        gens.push_back(std::move(q));
    }
    if (gens.empty()) return RootVerdict::HasComplexRoot;

    try {
        if (buchberger(gens, max_reductions / 2, st) == Outcome::FoundOne) return RootVerdict::NoNonzeroRoot;

        // t * x_1 * ... * x_n - 1 forces every variable to be invertible.
        std::vector<std::size_t> widen(compact);
        for (std::size_t v = 0; v < compact; ++v) widen[v] = v;
        std::vector<Polynomial> sat;
        for (const auto& g : gens) sat.push_back(g.remapped(widen, compact + 1));
        Exponents all(compact + 1, 1);
        sat.push_back(Polynomial::from_terms(compact + 1, {{all, 0, Rational(1)}, {Exponents(compact + 1, 0), 0, Rational(-1)}}));
        std::size_t remaining = max_reductions > st.reductions ? max_reductions - st.reductions : 0;
        GroebnerStats second;
        Outcome o = buchberger(std::move(sat), remaining, second);
        st.reductions += second.reductions;
        st.basis_size = second.basis_size;
        if (o == Outcome::FoundOne) return RootVerdict::NoNonzeroRoot;
        if (o == Outcome::Complete) return RootVerdict::HasComplexRoot;
        return RootVerdict::Unknown;
    } catch (const std::length_error&) {
        return RootVerdict::Unknown;
    } catch (const std::overflow_error&) {
        return RootVerdict::Unknown;
    }
}

}  // namespace sscs::algebra
