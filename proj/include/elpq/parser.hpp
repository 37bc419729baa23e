#pragma once

#include <elpq/model.hpp>
#include <elpq/query.hpp>

#include <string>
#include <string_view>

namespace elpq {

/// Parses the ELP surface language:
///
///   program  := (rule ".")*
///   rule     := headlist? (":-" body)?
///   headlist := atom ("v" atom)*
///   body     := elem ("," elem)*
///   elem     := atom | "not" atom | "knot" lit | "K" lit | "M" lit
///   lit      := atom | "-" atom
///   atom     := ident ("(" term ("," term)* ")")?
///
/// `%` starts a comment. K and M are desugared on the fly.
/// Throws SyntaxError, ArityMismatchError or
/// ClassicalNegationOutsideEpistemicError.
Program parse_program(std::string_view text);

/// Canonical text form; parse_program(serialize_program(p)) == p.
std::string serialize_program(const Program& program);

std::string serialize_rule(const Rule& rule);

/// Comma-separated `K lit` / `M lit` items over ground literals; blank text
/// yields the empty query.
Query parse_query(std::string_view text);

} // namespace elpq
