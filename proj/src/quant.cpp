#include <elpq/quant.hpp>

#include <elpq/error.hpp>

#include <algorithm>

namespace elpq {

Program query_union(const Program& program, const Query& query) {
    for (const auto& p : program.predicates())
        if (p.rfind(kQueryAtomPrefix, 0) == 0)
            throw ReservedNameCollision("predicate '" + p + "' uses the reserved prefix " + kQueryAtomPrefix);
    Program out = program;
    std::size_t i = 0;
    for (const auto& item : query.items) {
        if (!item.literal.atom.isGround()) throw NonGroundError("query item '" + item.str() + "' is not ground");
        Atom fresh{std::string(kQueryAtomPrefix) + std::to_string(++i)};
        Rule r;
        r.head.push_back(fresh);
        r.bodyEpi.push_back(EpiElement::knot(Literal{fresh, true}));
        r.bodyEpi.push_back(item.op == Modality::K ? EpiElement::knot(item.literal) : EpiElement::K(item.literal.negated()));
        out.add(std::move(r));
    }
    return out;
}

Count plausibility_level(const Program& program, const Query& query, const QuantOptions& options) {
    return count_world_views(ground(query_union(program, query), options.ground), options.elp);
}

ProbabilityResult probability_details(const Program& program, const Query& query, const QuantOptions& options) {
    ProbabilityResult res;
    res.baseLevel = plausibility_level(program, Query{}, options);
    res.level     = query.empty() ? res.baseLevel : plausibility_level(program, query, options);
    res.value     = Rational(res.level, std::max(Count(1), res.baseLevel));
    return res;
}

Rational probability(const Program& program, const Query& query, const QuantOptions& options) {
    return probability_details(program, query, options).value;
}

std::string to_fraction(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_decimal(const Rational& r, unsigned places) {
    Count num = numerator(r), den = denominator(r);
    bool  neg = num < 0;
    if (neg) num = -num;
    Count scale = 1;
    for (unsigned i = 0; i != places; ++i) scale *= 10;
    Count scaled = (num * scale * 2 + den) / (den * 2);
    std::string digits = Count(scaled / scale).str();
    if (places) {
        std::string frac = Count(scaled % scale).str();
        digits += "." + std::string(places - frac.size(), '0') + frac;
    }
    return (neg && scaled != 0 ? "-" : "") + digits;
}

} // namespace elpq
