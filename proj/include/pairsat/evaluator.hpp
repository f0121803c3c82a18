#pragma once

#include <span>
#include <vector>

#include "pairsat/formula.hpp"
#include "pairsat/interpretation.hpp"

namespace pairsat {

/// Truth value of `f` under `i`. Extension literals (sub dom/ran/img/comp)
/// are rejected with ContractError; use extended_evaluate for those.
/// Throws EvaluationError for unassigned free variables, or when a pair
/// quantifier ranges over a map value holding a non-pair.
bool evaluate(const Interpretation& i, const Formula& f);

/// Like evaluate, but extension literals are interpreted directly.
bool extended_evaluate(const Interpretation& i, const Formula& f);

/// A formula flattened onto variable slots, for repeated evaluation.
///
/// Every distinct variable gets one slot; free variables come first, in
/// sorted order. Quantifiers save and restore the slots they bind, so the
/// environment is unchanged after eval().
class CompiledFormula {
 public:
  explicit CompiledFormula(const Formula& f);

  const std::vector<Variable>& free_slots() const { return free_; }
  std::size_t slot_count() const { return slots_.size(); }
  /// -1 when the variable does not occur.
  int slot_of(const Variable& v) const;

  /// `env` has slot_count() entries with the free slots filled in.
  bool eval(std::span<HFSet> env, const PairingSpec& p) const;

  /// Loads the free slots from `i` and evaluates.
  bool eval(const Interpretation& i) const;

 private:
  struct Op {
    Kind kind;
    int a = -1, b = -1, c = -1;
    bool map_container = false;
    int left = -1, right = -1;
  };
  int compile(const Formula& f);
  int slot(const Variable& v);
  bool run(int op, HFSet* env, const PairingSpec& p) const;

  std::vector<Op> ops_;
  std::vector<Variable> slots_;
  std::vector<Variable> free_;
  int root_ = -1;
};

bool contains_extension_atom(const Formula& f);

}  // namespace pairsat
