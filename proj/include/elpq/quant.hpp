#pragma once

#include <elpq/elp.hpp>
#include <elpq/query.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace elpq {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr const char* kQueryAtomPrefix = "__q";

/// P plus one filtering rule `__qi :- knot __qi, not q_i` per query item, with
/// not K l = knot l and not M l = K -l. Throws ReservedNameCollision if P
/// already uses a `__q` predicate.
Program query_union(const Program& program, const Query& query);

struct QuantOptions {
    GroundOptions ground;
    ElpOptions    elp;
};

/// Number of world views of the grounding of query_union(P, Q).
Count plausibility_level(const Program& program, const Query& query, const QuantOptions& options = {});

struct ProbabilityResult {
    Count    level;     // L(P,Q)
    Count    baseLevel; // L(P,{})
    Rational value;     // level / max(1, baseLevel)
};

ProbabilityResult probability_details(const Program& program, const Query& query, const QuantOptions& options = {});
Rational          probability(const Program& program, const Query& query, const QuantOptions& options = {});

/// "n/d", always with a denominator.
std::string to_fraction(const Rational& r);
/// Decimal expansion rounded half-up to `places` digits.
std::string to_decimal(const Rational& r, unsigned places = 6);

} // namespace elpq
