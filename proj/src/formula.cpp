#include "pairsat/formula.hpp"

#include <stdexcept>

#include "pairsat/error.hpp"

namespace pairsat {

bool is_atom(Kind k) { return k <= Kind::SubComp; }

bool is_extension_atom(Kind k) {
  return k == Kind::SubDom || k == Kind::SubRange || k == Kind::SubImage || k == Kind::SubComp;
}

bool is_connective(Kind k) { return k >= Kind::Not && k <= Kind::Iff; }

bool is_quantifier(Kind k) { return k >= Kind::ForallIn; }

bool is_universal(Kind k) {
  return k == Kind::ForallIn || k == Kind::ForallPairIn || k == Kind::ForallInNonpairs;
}

bool is_existential(Kind k) { return k == Kind::ExistsIn || k == Kind::ExistsPairIn; }

namespace {

std::size_t var_arity(Kind k) {
  switch (k) {
    case Kind::MemberSet:
    case Kind::EqualSet:
    case Kind::EqualMap:
    case Kind::MemberNonpairs:
    case Kind::SubDom:
    case Kind::SubRange:
    case Kind::ForallIn:
    case Kind::ExistsIn:
    case Kind::ForallInNonpairs:
      return 2;
    case Kind::PairMember:
    case Kind::SubImage:
    case Kind::SubComp:
    case Kind::ForallPairIn:
    case Kind::ExistsPairIn:
      return 3;
    default:
      return 0;
  }
}

std::size_t child_arity(Kind k) {
  if (is_atom(k)) return 0;
  if (k == Kind::Not || is_quantifier(k)) return 1;
  return 2;
}

}  // namespace

Formula Formula::make(Kind kind, std::vector<Variable> vars, std::vector<Formula> children) {
  if (vars.size() != var_arity(kind) || children.size() != child_arity(kind))
    throw std::invalid_argument("Formula::make: wrong arity");
  return Formula(std::make_shared<const Node>(Node{kind, std::move(vars), std::move(children)}));
}

Formula Formula::member(Variable x, Variable y) { return make(Kind::MemberSet, {x, y}, {}); }
Formula Formula::equal(Variable x, Variable y) { return make(Kind::EqualSet, {x, y}, {}); }
Formula Formula::pair_member(Variable x, Variable y, Variable c) {
  return make(Kind::PairMember, {x, y, c}, {});
}
Formula Formula::equal_map(Variable f, Variable g) { return make(Kind::EqualMap, {f, g}, {}); }
Formula Formula::member_nonpairs(Variable x, Variable y) {
  return make(Kind::MemberNonpairs, {x, y}, {});
}
Formula Formula::sub_dom(Variable x, Variable f) { return make(Kind::SubDom, {x, f}, {}); }
Formula Formula::sub_range(Variable x, Variable f) { return make(Kind::SubRange, {x, f}, {}); }
Formula Formula::sub_image(Variable y, Variable f, Variable x) {
  return make(Kind::SubImage, {y, f, x}, {});
}
Formula Formula::sub_comp(Variable h, Variable f, Variable g) {
  return make(Kind::SubComp, {h, f, g}, {});
}

Formula Formula::negation(Formula a) { return make(Kind::Not, {}, {std::move(a)}); }
Formula Formula::conj(Formula a, Formula b) { return make(Kind::And, {}, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Kind::Or, {}, {std::move(a), std::move(b)}); }
Formula Formula::implies(Formula a, Formula b) {
  return make(Kind::Implies, {}, {std::move(a), std::move(b)});
}
Formula Formula::iff(Formula a, Formula b) { return make(Kind::Iff, {}, {std::move(a), std::move(b)}); }

Formula Formula::forall_in(Variable x, Variable d, Formula body) {
  return make(Kind::ForallIn, {x, d}, {std::move(body)});
}
Formula Formula::exists_in(Variable x, Variable d, Formula body) {
  return make(Kind::ExistsIn, {x, d}, {std::move(body)});
}
Formula Formula::forall_pair_in(Variable x, Variable y, Variable c, Formula body) {
  return make(Kind::ForallPairIn, {x, y, c}, {std::move(body)});
}
Formula Formula::exists_pair_in(Variable x, Variable y, Variable c, Formula body) {
  return make(Kind::ExistsPairIn, {x, y, c}, {std::move(body)});
}
Formula Formula::forall_in_nonpairs(Variable x, Variable d, Formula body) {
  return make(Kind::ForallInNonpairs, {x, d}, {std::move(body)});
}

std::vector<Variable> Formula::bound_vars() const {
  if (!is_quantifier(kind())) return {};
  return std::vector<Variable>(vars().begin(), vars().end() - 1);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.vars() == b.vars() && a.children() == b.children();
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.vars() <=> b.vars(); c != 0) return c;
  return a.children() <=> b.children();
}

Formula negate(const Formula& f) {
  if (f.kind() == Kind::Not) return f.child(0);
  return Formula::negation(f);
}

Formula conjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("conjoin: empty list");
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula disjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("disjoin: empty list");
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

namespace {

void collect_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Kind::And) {
    collect_conjuncts(f.child(0), out);
    collect_conjuncts(f.child(1), out);
  } else {
    out.push_back(f);
  }
}

void collect_free(const Formula& f, std::set<Variable>& bound, FreeVars& out) {
  auto note = [&](const Variable& v) {
    if (bound.count(v)) return;
    (v.sort == Sort::Set ? out.set_vars : out.map_vars).insert(v.name);
  };
  if (is_quantifier(f.kind())) {
    note(f.domain_var());
    std::vector<Variable> added;
    for (const auto& b : f.bound_vars())
      if (bound.insert(b).second) added.push_back(b);
    collect_free(f.child(0), bound, out);
    for (const auto& b : added) bound.erase(b);
    return;
  }
  for (const auto& v : f.vars()) note(v);
  for (const auto& c : f.children()) collect_free(c, bound, out);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  for (const auto& v : f.vars()) out.insert(v.name);
  for (const auto& c : f.children()) collect_names(c, out);
}

Formula substitute_rec(const Formula& f, const std::map<Variable, Variable>& renaming) {
  auto map_var = [&](const Variable& v) {
    auto it = renaming.find(v);
    return it == renaming.end() ? v : it->second;
  };
  if (is_quantifier(f.kind())) {
    std::vector<Variable> vars = f.vars();
    vars.back() = map_var(vars.back());
    std::map<Variable, Variable> inner = renaming;
    for (const auto& b : f.bound_vars()) inner.erase(b);
    return Formula::make(f.kind(), std::move(vars), {substitute_rec(f.child(0), inner)});
  }
  std::vector<Variable> vars;
  for (const auto& v : f.vars()) vars.push_back(map_var(v));
  std::vector<Formula> children;
  for (const auto& c : f.children()) children.push_back(substitute_rec(c, renaming));
  return Formula::make(f.kind(), std::move(vars), std::move(children));
}

}  // namespace

std::vector<Formula> conjuncts_of(const Formula& f) {
  std::vector<Formula> out;
  collect_conjuncts(f, out);
  return out;
}

std::set<Variable> FreeVars::all() const {
  std::set<Variable> out;
  for (const auto& s : set_vars) out.insert(Variable::set(s));
  for (const auto& m : map_vars) out.insert(Variable::map(m));
  return out;
}

FreeVars free_vars(const Formula& f) {
  FreeVars out;
  std::set<Variable> bound;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1 + f.vars().size();
  for (const auto& c : f.children()) n += formula_size(c);
  return n;
}

Formula substitute_free(const Formula& f, const std::map<Variable, Variable>& renaming) {
  if (renaming.empty()) return f;
  return substitute_rec(f, renaming);
}

}  // namespace pairsat
