#pragma once

#include <string>

#include "gm/formula.hpp"
#include "gm/signature.hpp"

namespace gm {

// Formula DSL:
//
//   F ::= '!' F
//       | 'And' '[' F (';' F)* ']'
//       | 'Or'  '[' F (';' F)* ']'
//       | ('Exists' | 'Forall') IDENT ':' IDENT '.' F     (body extends right)
//       | IDENT '(' term (',' term)* ')'                  (relation atom)
//       | term '=' term
//       | '(' F ')'
//
// Terms are declared constants or variables bound by an enclosing quantifier.
// Whitespace is free.  Sorts are resolved during parsing, so the result is
// well-sorted; violations raise SortError / UnknownSymbolError / SyntaxError.
Formula parse_formula(const std::string& text, const Signature& sig);

// Canonical rendering; parse_formula(render_formula(f)) == f for well-sorted f.
// Equalities are always parenthesized: "(c0 = c1)".
std::string render_formula(const Formula& f);

std::string render_literal(const Literal& l);

// A literal in the DSL: an Atom/Eq formula optionally prefixed with '!'.
Literal parse_literal(const std::string& text, const Signature& sig);

}  // namespace gm
