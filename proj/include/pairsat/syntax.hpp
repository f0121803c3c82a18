#pragma once

#include <string>
#include <string_view>

#include "pairsat/formula.hpp"

namespace pairsat {

/// Parses concrete syntax into a sorted AST.
///
///   formula := iff
///   iff     := imp ("<->" imp)*
///   imp     := or ("->" imp)?
///   or      := and ("or" and)*
///   and     := unary ("and" unary)*
///   unary   := "not" unary | quant | "(" formula ")" | atom
///   quant   := ("forall" | "exists") binder "." formula
///   binder  := ident "in" (ident | "nonpairs" "(" ident ")")
///            | "[" ident "," ident "]" "in" (mapref | ident)
///   atom    := ident ("in" | "notin") (ident | "nonpairs" "(" ident ")")
///            | ident ("=" | "!=") ident
///            | "[" ident "," ident "]" ("in" | "notin") (mapref | ident)
///            | mapref ("=" | "!=") mapref
///            | ident "sub" ("dom" | "ran") "(" mapref ")"
///            | ident "sub" "img" "(" mapref "," ident ")"
///            | mapref "sub" "comp" "(" mapref "," mapref ")"
///   mapref  := "@" ident
///
/// A quantifier body extends as far to the right as possible. Identifiers
/// may contain letters, digits, `_`, `'`, and (after the first character)
/// the reserved `#` and `$` used for generated names.
///
/// Throws ParseError (with line and column) or SortError.
Formula parse_formula(std::string_view text);

/// Canonical concrete syntax with minimal parentheses; parse(print(f)) == f.
std::string print_formula(const Formula& f);

}  // namespace pairsat
