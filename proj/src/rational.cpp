#include "sscs/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace sscs {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    auto ok = [](const std::string& s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!ok(num, true) || !ok(den, false)) throw std::invalid_argument("not a rational: '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);
    Integer d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

void ParamAssignment::set(EdgeIndex e, Rational value) {
    if (value == 0) throw std::invalid_argument("edge parameters must be nonzero");
    values_.at(e) = std::move(value);
}

bool ParamAssignment::complete() const {
    return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); });
}

void ParamAssignment::require_complete(const StructuredGraph& g) const {
    if (values_.size() != g.edge_count())
        throw PreconditionError("parameter assignment covers " + std::to_string(values_.size()) +
                                " edges, graph has " + std::to_string(g.edge_count()));
    for (EdgeIndex e = 0; e < values_.size(); ++e)
        if (!values_[e]) throw PreconditionError("missing value for edge " + g.edge_name(e));
}

ParamAssignment ParamAssignment::uniform(std::size_t edge_count, const Rational& value) {
    ParamAssignment p(edge_count);
    for (EdgeIndex e = 0; e < edge_count; ++e) p.set(e, value);
    return p;
}

}  // namespace sscs
