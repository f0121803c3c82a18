#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pairsat/formula.hpp"
#include "pairsat/hfset.hpp"
#include "pairsat/interpretation.hpp"
#include "pairsat/normalize.hpp"
#include "pairsat/pairing.hpp"

namespace pairsat {

/// A propositional formula; Prop variable k stands for names[k].
struct PropFormula {
  Prop prop;
  std::vector<std::string> names;

  std::string to_string() const;
};

/// Syntax: identifiers, `~`, `&`, `|`, `->` (right associative), `<->`,
/// parentheses; precedence in that order. Throws ParseError.
PropFormula parse_propositional(std::string_view text);

/// Satisfiability by truth table over all 2^n valuations.
bool truth_table_sat(const PropFormula& q);

/// Each variable p becomes the atom `x_p in X`. The result has no quantifiers.
Formula encode_propositional(const PropFormula& q);

struct DominoSystem {
  std::vector<std::string> types;
  std::map<std::string, std::vector<std::string>> H;
  std::map<std::string, std::vector<std::string>> V;

  std::size_t index_of(const std::string& type) const;
};

/// Text format, statements separated by `;` or newlines, `#` comments:
///   types: d1 d2
///   H d1: d1 d2
///   V d1: d1
/// H and V must be given for every type (possibly with an empty list).
/// Throws ParseError.
DominoSystem parse_domino(std::string_view text);

/// A variable defined by a construct over other variables, in dependency
/// order; used to complete hand-built interpretations.
struct Definition {
  enum class Op { Inverse, SetSingleton, SetDiff, Cartesian, MapUnion, MapInter, MapEmpty };
  Op op;
  Variable target;
  std::vector<Variable> operands;
};

struct DominoEncoding {
  Formula formula;
  Formula is_peano;
  Formula partition;
  std::vector<Formula> hor;
  std::vector<Formula> ver;
  Variable N, Z, S;
  std::vector<Variable> Q;
  std::vector<Definition> definitions;
};

/// φ_D = is_Peano(N,Z,S) ∧ partition(Q_1..Q_l; N×N) ∧ ⋀ hor_i ∧ ⋀ ver_i,
/// expanded through the construct library. The only extension atoms are
/// `N sub dom(@S)` and `M sub dom(@S_inv)`.
DominoEncoding encode_domino(const DominoSystem& d);

/// Number of atoms of the given kind.
std::size_t count_atoms(const Formula& f, Kind kind);

/// Assigns every Definition target of `e` from its operands, which must be
/// assigned already (directly or by an earlier definition).
Interpretation complete_definitions(const DominoEncoding& e, const Interpretation& base);

/// Finite pseudo-grid: N = {n_0..n_{k-1}} with n_0 = ∅ and n_{i+1} = {n_i},
/// Z = n_0, S the partial successor, and [n_m, n_n] ∈ Q_i iff tiling[m][n]
/// is type i. All defined variables are completed.
Interpretation grid_interpretation(const DominoSystem& d, const DominoEncoding& e,
                                   const std::vector<std::vector<std::string>>& tiling);

struct PeanoCandidate {
  HFSet N;
  HFSet Z;
  HFSet S;
  PairingSpec pairing = PairingSpec::kuratowski();
};

struct PeanoReport {
  /// 0 when all axioms hold, otherwise the first failing axiom 1..5.
  int failed_axiom = 0;
  std::string witness;

  bool pass() const { return failed_axiom == 0; }
  std::string to_string() const;
};

/// Checks P1..P5 in order. P5 is checked over all 2^|N| subsets; throws
/// ResourceError when |N| > cap.
PeanoReport check_peano(const PeanoCandidate& c, std::size_t cap = 12);

/// Reads N, Z and @S (plus the pairing) from a model.
PeanoCandidate peano_candidate_from(const Interpretation& i);

}  // namespace pairsat
