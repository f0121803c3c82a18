#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace pairsat {

enum class Sort { Set, Map };

/// A sorted variable. Map variables are written `@f` in concrete syntax.
struct Variable {
  std::string name;
  Sort sort = Sort::Set;

  static Variable set(std::string name) { return {std::move(name), Sort::Set}; }
  static Variable map(std::string name) { return {std::move(name), Sort::Map}; }

  std::string display() const { return sort == Sort::Map ? "@" + name : name; }

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

enum class Kind {
  // atoms
  MemberSet,       // x in y
  EqualSet,        // x = y
  PairMember,      // [x,y] in @f   (or [x,y] in z in the nonpairs fragment)
  EqualMap,        // @f = @g
  MemberNonpairs,  // x in nonpairs(y)
  SubDom,          // x sub dom(@f)
  SubRange,        // x sub ran(@f)
  SubImage,        // y sub img(@f, x)
  SubComp,         // @h sub comp(@f, @g)
  // connectives
  Not,
  And,
  Or,
  Implies,
  Iff,
  // restricted quantifiers
  ForallIn,          // forall x in y . body
  ExistsIn,          // exists x in y . body
  ForallPairIn,      // forall [x,y] in @f . body
  ExistsPairIn,      // exists [x,y] in @f . body
  ForallInNonpairs,  // forall x in nonpairs(y) . body
};

bool is_atom(Kind k);
bool is_extension_atom(Kind k);
bool is_connective(Kind k);
bool is_quantifier(Kind k);
bool is_universal(Kind k);
bool is_existential(Kind k);

/// Immutable formula tree with structural sharing.
///
/// `vars()` holds the argument variables in the order of the comment on
/// each Kind; for quantifiers the bound variables come first and the
/// domain (set or map) variable last.
class Formula {
 public:
  Kind kind() const { return node_->kind; }
  const std::vector<Variable>& vars() const { return node_->vars; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }

  // Atoms.
  static Formula member(Variable x, Variable y);
  static Formula equal(Variable x, Variable y);
  static Formula pair_member(Variable x, Variable y, Variable container);
  static Formula equal_map(Variable f, Variable g);
  static Formula member_nonpairs(Variable x, Variable y);
  static Formula sub_dom(Variable x, Variable f);
  static Formula sub_range(Variable x, Variable f);
  static Formula sub_image(Variable y, Variable f, Variable x);
  static Formula sub_comp(Variable h, Variable f, Variable g);

  // Connectives.
  static Formula negation(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);

  // Quantifiers.
  static Formula forall_in(Variable x, Variable domain, Formula body);
  static Formula exists_in(Variable x, Variable domain, Formula body);
  static Formula forall_pair_in(Variable x, Variable y, Variable container, Formula body);
  static Formula exists_pair_in(Variable x, Variable y, Variable container, Formula body);
  static Formula forall_in_nonpairs(Variable x, Variable domain, Formula body);

  /// Generic constructor; checks arity only.
  static Formula make(Kind kind, std::vector<Variable> vars, std::vector<Formula> children);

  /// Bound variables of a quantifier node (empty otherwise).
  std::vector<Variable> bound_vars() const;
  /// Domain variable of a quantifier node.
  const Variable& domain_var() const { return node_->vars.back(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::vector<Variable> vars;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// `negate(not a) = a`, otherwise `not a`.
Formula negate(const Formula& f);
/// Left-associated conjunction; requires a non-empty list.
Formula conjoin(const std::vector<Formula>& parts);
/// Left-associated disjunction; requires a non-empty list.
Formula disjoin(const std::vector<Formula>& parts);
/// Flattens nested top-level conjunctions into their conjuncts.
std::vector<Formula> conjuncts_of(const Formula& f);

struct FreeVars {
  std::set<std::string> set_vars;
  std::set<std::string> map_vars;
  std::set<Variable> all() const;
};

/// Variables occurring free, split by sort.
FreeVars free_vars(const Formula& f);
/// Every variable name appearing anywhere (free or bound), regardless of sort.
std::set<std::string> all_names(const Formula& f);

/// Symbol count: one per node plus one per variable occurrence.
std::size_t formula_size(const Formula& f);

/// Replaces free occurrences of variables according to `renaming`.
/// Sorts must be preserved by the caller; no capture checks are performed.
Formula substitute_free(const Formula& f, const std::map<Variable, Variable>& renaming);

}  // namespace pairsat
