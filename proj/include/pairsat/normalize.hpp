#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pairsat/formula.hpp"

namespace pairsat {

/// Propositional formula over placeholders p1..pn (0-based indices).
class Prop {
 public:
  enum class Op { Var, Not, And, Or, Implies, Iff };

  static Prop var(int index);
  static Prop make(Op op, std::vector<Prop> children);

  Op op() const { return node_->op; }
  int index() const { return node_->index; }
  const std::vector<Prop>& children() const { return node_->children; }

  bool eval(const std::vector<bool>& valuation) const;
  /// Kleene three-valued evaluation; entries are -1 (unknown), 0 or 1.
  std::optional<bool> eval3(const std::vector<std::int8_t>& partial) const;

  /// e.g. `p1 or not p1`
  std::string to_string() const;

  friend bool operator==(const Prop& a, const Prop& b);

 private:
  struct Node {
    Op op;
    int index = -1;
    std::vector<Prop> children;
  };
  explicit Prop(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Propositional skeleton: `proposition` with `substitution[i]` standing for p(i+1).
struct Skeleton {
  Prop proposition;
  std::vector<Formula> substitution;

  /// Applies the substitution; reproduces the source formula exactly.
  Formula apply() const;
};

/// Splits `f` into its boolean structure over atoms and prenex formulas.
/// Structurally equal leaves share one placeholder.
Skeleton skeleton(const Formula& f);

/// Rewrites every existential prenex subformula `exists X . d` as
/// `not forall X . negate(d)`.
Formula dualize_existentials(const Formula& f);

/// Quantifier-free equisatisfiable companion of an existential simple-prenex
/// formula: membership atoms for each binder plus the matrix, with every
/// quantified variable renamed `name#k`. Throws ContractError otherwise.
Formula eliminate_existential(const Formula& f);

/// A conjunction of universal simple-prenex formulas (quantifier-free
/// literals count as an empty prefix).
struct NormalizedConjunction {
  std::vector<Formula> conjuncts;
  /// The valuation of the skeleton this conjunction was built from.
  std::vector<bool> valuation;

  Formula formula() const { return conjoin(conjuncts); }
};

/// Checks the structural invariants of a normalized conjunction: every
/// conjunct is universal simple-prenex with a quantifier-free matrix,
/// bound variables are distinct within a conjunct and never free anywhere
/// in the conjunction. Returns an explanation on failure.
std::optional<std::string> check_normalized(const std::vector<Formula>& conjuncts);

/// Reads a conjunction of universal simple-prenex formulas as a
/// NormalizedConjunction; throws ContractError when check_normalized fails.
NormalizedConjunction as_normalized(const Formula& f);

struct NormalizeOptions {
  /// Return false to prune a partial valuation (entries -1/0/1).
  std::function<bool(const std::vector<std::int8_t>&)> prune_hook;
};

/// Streams the normalized conjunctions of `f`, one per satisfying valuation
/// of its skeleton in lexicographic order (true before false). The callback
/// returns false to stop early. Returns the number emitted.
std::size_t for_each_normalized_conjunction(const Formula& f,
                                            const std::function<bool(const NormalizedConjunction&)>& emit,
                                            const NormalizeOptions& options = {});

std::vector<NormalizedConjunction> normalized_conjunctions(const Formula& f,
                                                           const NormalizeOptions& options = {});

/// Generates names `base#k` that avoid a growing set of taken names.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> taken = {}) : taken_(std::move(taken)) {}

  /// One shared index k for a group of names, e.g. {x, y} -> {x#3, y#3}.
  std::vector<std::string> group(const std::vector<std::string>& bases);
  std::string one(const std::string& base) { return group({base})[0]; }
  void reserve(const std::string& name) { taken_.insert(name); }
  bool taken(const std::string& name) const { return taken_.count(name) > 0; }

 private:
  std::set<std::string> taken_;
  unsigned counter_ = 0;
};

/// Base of a generated name: `x#3` -> `x`.
std::string name_base(const std::string& name);

}  // namespace pairsat
