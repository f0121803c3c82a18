#pragma once

#include <string>
#include <vector>

#include "pairsat/formula.hpp"

namespace pairsat {

/// Which fragment a formula is checked against.
enum class Language {
  /// Two-sorted base language: set/map variables, restricted quantifiers.
  Base,
  /// Set-variables-only fragment with nonpairs(.) terms (target of the reduction).
  Nonpairs,
};

struct ValidateOptions {
  Language language = Language::Base;
  /// Permit `sub dom/ran/img/comp` literals.
  bool extensions = false;
};

struct Diagnostic {
  enum class Code {
    SortConflict,        // one name used with two sorts
    SortViolation,       // argument of the wrong sort for the fragment
    NonSimplePrefix,     // quantified variable used as a domain variable
    MixedPrefix,         // universal and existential quantifiers in one prefix
    NestedQuantifier,    // quantifier inside a quantifier-free matrix
    DuplicateBinder,     // variable bound twice in one prefix
    ExtensionDisabled,   // extension literal without the capability flag
    WrongFragment,       // construct not available in the selected fragment
  };
  Code code;
  std::string message;
};

/// Checks sorts, the simple-prenex shape, and fragment membership.
/// An empty result means the formula is well-formed.
std::vector<Diagnostic> validate(const Formula& f, const ValidateOptions& options = {});

/// Convenience: true when validate() reports nothing.
inline bool is_valid(const Formula& f, const ValidateOptions& options = {}) {
  return validate(f, options).empty();
}

/// Shape of a simple-prenex formula: a homogeneous quantifier prefix over a
/// quantifier-free matrix.
struct PrenexView {
  std::vector<Formula> prefix;  // quantifier nodes, outermost first
  Formula matrix;
};
PrenexView prenex_view(const Formula& f);

}  // namespace pairsat
