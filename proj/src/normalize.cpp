#include "pairsat/normalize.hpp"

#include <map>

#include "pairsat/error.hpp"
#include "pairsat/syntax.hpp"
#include "pairsat/validate.hpp"

namespace pairsat {

Prop Prop::var(int index) {
  return Prop(std::make_shared<const Node>(Node{Op::Var, index, {}}));
}

Prop Prop::make(Op op, std::vector<Prop> children) {
  const std::size_t want = op == Op::Not ? 1 : 2;
  if (op == Op::Var || children.size() != want) throw ContractError("bad proposition arity");
  return Prop(std::make_shared<const Node>(Node{op, -1, std::move(children)}));
}

bool operator==(const Prop& a, const Prop& b) {
  if (a.node_ == b.node_) return true;
  return a.op() == b.op() && a.index() == b.index() && a.children() == b.children();
}

bool Prop::eval(const std::vector<bool>& v) const {
  const auto& c = children();
  switch (op()) {
    case Op::Var: return v.at(static_cast<std::size_t>(index()));
    case Op::Not: return !c[0].eval(v);
    case Op::And: return c[0].eval(v) && c[1].eval(v);
    case Op::Or: return c[0].eval(v) || c[1].eval(v);
    case Op::Implies: return !c[0].eval(v) || c[1].eval(v);
    case Op::Iff: return c[0].eval(v) == c[1].eval(v);
  }
  return false;
}

std::optional<bool> Prop::eval3(const std::vector<std::int8_t>& v) const {
  const auto& c = children();
  switch (op()) {
    case Op::Var: {
      auto x = v.at(static_cast<std::size_t>(index()));
      if (x < 0) return std::nullopt;
      return x != 0;
    }
    case Op::Not: {
      auto a = c[0].eval3(v);
      if (!a) return std::nullopt;
      return !*a;
    }
    case Op::And: {
      auto a = c[0].eval3(v);
      if (a == false) return false;
      auto b = c[1].eval3(v);
      if (b == false) return false;
      if (a && b) return true;
      return std::nullopt;
    }
    case Op::Or: {
      auto a = c[0].eval3(v);
      if (a == true) return true;
      auto b = c[1].eval3(v);
      if (b == true) return true;
      if (a && b) return false;
      return std::nullopt;
    }
    case Op::Implies: {
      auto a = c[0].eval3(v);
      if (a == false) return true;
      auto b = c[1].eval3(v);
      if (b == true) return true;
      if (a && b) return false;
      return std::nullopt;
    }
    case Op::Iff: {
      auto a = c[0].eval3(v), b = c[1].eval3(v);
      if (a && b) return *a == *b;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

int prop_precedence(Prop::Op op) {
  switch (op) {
    case Prop::Op::Iff: return 1;
    case Prop::Op::Implies: return 2;
    case Prop::Op::Or: return 3;
    case Prop::Op::And: return 4;
    default: return 5;
  }
}

void print_prop(const Prop& p, int ctx, std::string& out) {
  switch (p.op()) {
    case Prop::Op::Var: out += "p" + std::to_string(p.index() + 1); return;
    case Prop::Op::Not:
      out += "not ";
      print_prop(p.children()[0], 5, out);
      return;
    default: break;
  }
  const int prec = prop_precedence(p.op());
  const bool parens = prec < ctx;
  static const std::map<Prop::Op, const char*> ops{
      {Prop::Op::And, " and "}, {Prop::Op::Or, " or "}, {Prop::Op::Implies, " -> "}, {Prop::Op::Iff, " <-> "}};
  const bool right = p.op() == Prop::Op::Implies;
  if (parens) out += '(';
  print_prop(p.children()[0], right ? prec + 1 : prec, out);
  out += ops.at(p.op());
  print_prop(p.children()[1], right ? prec : prec + 1, out);
  if (parens) out += ')';
}

}  // namespace

std::string Prop::to_string() const {
  std::string out;
  print_prop(*this, 0, out);
  return out;
}

namespace {

Prop build_prop(const Formula& f, std::map<Formula, int>& index, std::vector<Formula>& sigma) {
  switch (f.kind()) {
    case Kind::Not: return Prop::make(Prop::Op::Not, {build_prop(f.child(0), index, sigma)});
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      Prop::Op op = f.kind() == Kind::And ? Prop::Op::And
                    : f.kind() == Kind::Or ? Prop::Op::Or
                    : f.kind() == Kind::Implies ? Prop::Op::Implies
                                                : Prop::Op::Iff;
      Prop a = build_prop(f.child(0), index, sigma);
      Prop b = build_prop(f.child(1), index, sigma);
      return Prop::make(op, {a, b});
    }
    default: {
      auto [it, inserted] = index.emplace(f, static_cast<int>(sigma.size()));
      if (inserted) sigma.push_back(f);
      return Prop::var(it->second);
    }
  }
}

Formula apply_prop(const Prop& p, const std::vector<Formula>& sigma) {
  const auto& c = p.children();
  switch (p.op()) {
    case Prop::Op::Var: return sigma.at(static_cast<std::size_t>(p.index()));
    case Prop::Op::Not: return Formula::negation(apply_prop(c[0], sigma));
    case Prop::Op::And: return Formula::conj(apply_prop(c[0], sigma), apply_prop(c[1], sigma));
    case Prop::Op::Or: return Formula::disj(apply_prop(c[0], sigma), apply_prop(c[1], sigma));
    case Prop::Op::Implies: return Formula::implies(apply_prop(c[0], sigma), apply_prop(c[1], sigma));
    case Prop::Op::Iff: return Formula::iff(apply_prop(c[0], sigma), apply_prop(c[1], sigma));
  }
  throw ContractError("bad proposition");
}

Kind universal_of(Kind k) {
  switch (k) {
    case Kind::ExistsIn: return Kind::ForallIn;
    case Kind::ExistsPairIn: return Kind::ForallPairIn;
    default: return k;
  }
}

// Membership atom stating that the bound variables of quantifier `q` lie in its domain.
Formula binder_atom(const Formula& q) {
  const auto& v = q.vars();
  switch (q.kind()) {
    case Kind::ForallIn:
    case Kind::ExistsIn: return Formula::member(v[0], v[1]);
    case Kind::ForallInNonpairs: return Formula::member_nonpairs(v[0], v[1]);
    default: return Formula::pair_member(v[0], v[1], v[2]);
  }
}

// Renames the bound variables of a prenex formula. `rename` receives the
// bound names of the whole prefix, outermost first, and returns new names.
Formula rename_prefix(const Formula& f,
                      const std::function<std::vector<std::string>(const std::vector<std::string>&)>& rename) {
  PrenexView view = prenex_view(f);
  std::vector<std::string> names;
  for (const auto& q : view.prefix)
    for (const auto& b : q.bound_vars()) names.push_back(b.name);
  const auto fresh = rename(names);
  std::map<Variable, Variable> renaming;
  std::vector<std::vector<Variable>> binder_vars;
  std::size_t next = 0;
  for (const auto& q : view.prefix) {
    std::vector<Variable> vars;
    for (std::size_t i = 0; i < q.bound_vars().size(); ++i) vars.push_back(Variable::set(fresh[next + i]));
    Variable dom = q.domain_var();
    if (auto it = renaming.find(dom); it != renaming.end()) dom = it->second;
    for (std::size_t i = 0; i < q.bound_vars().size(); ++i) renaming[Variable::set(names[next + i])] = vars[i];
    next += q.bound_vars().size();
    vars.push_back(dom);
    binder_vars.push_back(std::move(vars));
  }
  Formula body = substitute_free(view.matrix, renaming);
  for (std::size_t i = view.prefix.size(); i-- > 0;)
    body = Formula::make(view.prefix[i].kind(), binder_vars[i], {body});
  return body;
}

}  // namespace

Formula Skeleton::apply() const { return apply_prop(proposition, substitution); }

Skeleton skeleton(const Formula& f) {
  std::map<Formula, int> index;
  std::vector<Formula> sigma;
  Prop p = build_prop(f, index, sigma);
  return Skeleton{p, std::move(sigma)};
}

Formula dualize_existentials(const Formula& f) {
  const Kind k = f.kind();
  if (is_atom(k)) return f;
  if (is_connective(k)) {
    std::vector<Formula> kids;
    for (const auto& c : f.children()) kids.push_back(dualize_existentials(c));
    return Formula::make(k, f.vars(), kids);
  }
  if (!is_existential(k)) return f;
  PrenexView view = prenex_view(f);
  Formula body = negate(view.matrix);
  for (auto it = view.prefix.rbegin(); it != view.prefix.rend(); ++it) {
    if (!is_existential(it->kind())) throw ContractError("mixed quantifier prefix: " + print_formula(f));
    body = Formula::make(universal_of(it->kind()), it->vars(), {body});
  }
  return Formula::negation(body);
}

std::string name_base(const std::string& name) {
  auto pos = name.find('#');
  return pos == std::string::npos ? name : name.substr(0, pos);
}

std::vector<std::string> FreshNames::group(const std::vector<std::string>& bases) {
  for (;;) {
    ++counter_;
    std::vector<std::string> out;
    std::set<std::string> local;
    bool ok = true;
    for (const auto& b : bases) {
      std::string n = name_base(b) + "#" + std::to_string(counter_);
      if (taken_.count(n) || !local.insert(n).second) {
        ok = false;
        break;
      }
      out.push_back(n);
    }
    if (!ok) continue;
    for (const auto& n : out) taken_.insert(n);
    return out;
  }
}

namespace {

// Conjuncts witnessing `not f` for a universal prenex f (or a literal).
void witness(const Formula& f, FreshNames& fresh, std::vector<Formula>& out) {
  if (!is_quantifier(f.kind())) {
    out.push_back(negate(f));
    return;
  }
  Formula renamed = rename_prefix(f, [&](const std::vector<std::string>& names) { return fresh.group(names); });
  PrenexView view = prenex_view(renamed);
  for (const auto& q : view.prefix) out.push_back(binder_atom(q));
  out.push_back(negate(view.matrix));
}

}  // namespace

Formula eliminate_existential(const Formula& f) {
  if (!is_existential(f.kind())) throw ContractError("not an existential prenex formula: " + print_formula(f));
  PrenexView view = prenex_view(f);
  for (const auto& q : view.prefix)
    if (!is_existential(q.kind())) throw ContractError("mixed quantifier prefix: " + print_formula(f));
  if (is_quantifier(view.matrix.kind()) || !is_valid(f, {Language::Base, true}))
    throw ContractError("not a simple-prenex formula: " + print_formula(f));
  FreshNames fresh(all_names(f));
  Formula renamed = rename_prefix(f, [&](const std::vector<std::string>& names) { return fresh.group(names); });
  view = prenex_view(renamed);
  std::vector<Formula> parts;
  for (const auto& q : view.prefix) parts.push_back(binder_atom(q));
  parts.push_back(view.matrix);
  return conjoin(parts);
}

std::optional<std::string> check_normalized(const std::vector<Formula>& conjuncts) {
  if (conjuncts.empty()) return "empty conjunction";
  std::set<std::string> free_names;
  for (const auto& c : conjuncts) {
    auto fv = free_vars(c);
    free_names.insert(fv.set_vars.begin(), fv.set_vars.end());
    free_names.insert(fv.map_vars.begin(), fv.map_vars.end());
  }
  for (const auto& c : conjuncts) {
    PrenexView view = prenex_view(c);
    std::set<std::string> bound;
    for (const auto& q : view.prefix) {
      if (!is_universal(q.kind())) return "conjunct is not universal: " + print_formula(c);
      for (const auto& b : q.bound_vars()) {
        if (!bound.insert(b.name).second) return "variable " + b.name + " bound twice in: " + print_formula(c);
        if (free_names.count(b.name)) return "bound variable " + b.name + " also occurs free";
      }
    }
    for (const auto& q : view.prefix)
      if (bound.count(q.domain_var().name)) return "not simple-prenex: " + print_formula(c);
    if (!is_valid(c, {Language::Base, true})) return "conjunct is not simple-prenex: " + print_formula(c);
  }
  return std::nullopt;
}

NormalizedConjunction as_normalized(const Formula& f) {
  NormalizedConjunction nc;
  nc.conjuncts = conjuncts_of(f);
  if (auto why = check_normalized(nc.conjuncts)) throw ContractError("not a normalized conjunction: " + *why);
  return nc;
}

std::size_t for_each_normalized_conjunction(const Formula& f,
                                            const std::function<bool(const NormalizedConjunction&)>& emit,
                                            const NormalizeOptions& options) {
  auto diags = validate(f, {Language::Base, true});
  if (!diags.empty()) throw ContractError("formula does not validate: " + diags.front().message);

  Formula dual = dualize_existentials(f);
  Skeleton sk = skeleton(dual);
  const std::size_t n = sk.substitution.size();
  const std::set<std::string> names = all_names(f);
  FreeVars fv = free_vars(f);
  std::set<std::string> free_names = fv.set_vars;
  free_names.insert(fv.map_vars.begin(), fv.map_vars.end());

  FreshNames fresh(names);
  std::vector<std::int8_t> partial(n, -1);
  std::size_t emitted = 0;
  bool stop = false;

  auto build = [&]() {
    NormalizedConjunction nc;
    std::set<std::string> taken = free_names;
    for (std::size_t i = 0; i < n; ++i) {
      const Formula& s = sk.substitution[i];
      nc.valuation.push_back(partial[i] == 1);
      if (partial[i] == 1) {
        if (!is_quantifier(s.kind())) {
          nc.conjuncts.push_back(s);
          continue;
        }
        Formula renamed = rename_prefix(s, [&](const std::vector<std::string>& bound) {
          bool clash = false;
          for (const auto& b : bound) clash = clash || taken.count(b);
          std::vector<std::string> out = clash ? fresh.group(bound) : bound;
          taken.insert(out.begin(), out.end());
          return out;
        });
        nc.conjuncts.push_back(renamed);
      } else {
        std::size_t first = nc.conjuncts.size();
        witness(s, fresh, nc.conjuncts);
        for (std::size_t j = first; j < nc.conjuncts.size(); ++j) {
          auto w = free_vars(nc.conjuncts[j]);
          taken.insert(w.set_vars.begin(), w.set_vars.end());
        }
      }
    }
    return nc;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    auto value = sk.proposition.eval3(partial);
    if (value == false) return;
    if (options.prune_hook && !options.prune_hook(partial)) return;
    if (i == n) {
      if (value != true) return;
      ++emitted;
      if (!emit(build())) stop = true;
      return;
    }
    for (std::int8_t b : {std::int8_t{1}, std::int8_t{0}}) {
      partial[i] = b;
      rec(i + 1);
      if (stop) break;
    }
    partial[i] = -1;
  };
  rec(0);
  return emitted;
}

std::vector<NormalizedConjunction> normalized_conjunctions(const Formula& f, const NormalizeOptions& options) {
  std::vector<NormalizedConjunction> out;
  for_each_normalized_conjunction(f, [&](const NormalizedConjunction& nc) {
    out.push_back(nc);
    return true;
  }, options);
  return out;
}

}  // namespace pairsat
