#include "pairsat/reduction.hpp"

#include "pairsat/error.hpp"
#include "pairsat/evaluator.hpp"
#include "pairsat/syntax.hpp"

namespace pairsat {

Variable RenamingMap::set_var_for(const std::string& map_name) const {
  auto it = forward.find(map_name);
  if (it == forward.end()) throw ContractError("no renaming for map variable @" + map_name);
  return Variable::set(it->second);
}

RenamingMap make_renaming(const Formula& psi) {
  const auto names = all_names(psi);
  auto avoid = [&](std::string base, std::set<std::string>& used) {
    std::string n = base;
    for (int k = 1; names.count(n) || used.count(n); ++k) n = base + "$" + std::to_string(k);
    used.insert(n);
    return n;
  };
  RenamingMap r;
  std::set<std::string> used;
  std::set<std::string> maps;
  std::function<void(const Formula&)> collect = [&](const Formula& f) {
    for (const auto& v : f.vars())
      if (v.sort == Sort::Map) maps.insert(v.name);
    for (const auto& c : f.children()) collect(c);
  };
  collect(psi);
  for (const auto& m : maps) r.forward[m] = avoid("p$" + m, used);
  r.universe = avoid("U$0", used);
  return r;
}

Formula tau(const Formula& f, const RenamingMap& r) {
  auto sv = [&](const Variable& v) { return v.sort == Sort::Map ? r.set_var_for(v.name) : v; };
  const auto& v = f.vars();
  switch (f.kind()) {
    case Kind::MemberSet: return Formula::member_nonpairs(v[0], v[1]);
    case Kind::EqualSet: return f;
    case Kind::PairMember: return Formula::pair_member(v[0], v[1], sv(v[2]));
    case Kind::EqualMap: return Formula::equal(sv(v[0]), sv(v[1]));
    case Kind::ForallIn: return Formula::forall_in_nonpairs(v[0], v[1], tau(f.child(0), r));
    case Kind::ForallPairIn: return Formula::forall_pair_in(v[0], v[1], sv(v[2]), tau(f.child(0), r));
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(tau(c, r));
      return Formula::make(f.kind(), {}, kids);
    }
    default: throw ContractError("tau is defined on normalized conjunctions only: " + print_formula(f));
  }
}

TauResult tau(const NormalizedConjunction& psi) {
  Formula f = psi.formula();
  RenamingMap r = make_renaming(f);
  return {tau(f, r), r};
}

PsiPrime build_psi_prime(const NormalizedConjunction& psi) {
  const Formula f = psi.formula();
  const RenamingMap r = make_renaming(f);
  const Formula t = tau(f, r);
  const FreeVars fv = free_vars(f);

  std::set<std::string> taken = all_names(f);
  for (const auto& [m, x] : r.forward) taken.insert(x);
  taken.insert(r.universe);
  FreshNames fresh(taken);

  std::vector<Formula> parts{t};
  for (const auto& z : fv.set_vars) {
    auto names = fresh.group({"x", "y"});
    Variable x = Variable::set(names[0]), y = Variable::set(names[1]);
    parts.push_back(Formula::forall_pair_in(x, y, Variable::set(z), Formula::negation(Formula::equal(x, x))));
  }
  for (const auto& m : fv.map_vars) {
    Variable x = Variable::set(fresh.one("x"));
    parts.push_back(Formula::forall_in_nonpairs(x, r.set_var_for(m), Formula::negation(Formula::equal(x, x))));
  }
  for (const auto& z : fv.set_vars) parts.push_back(Formula::member_nonpairs(Variable::set(z), r.universe_var()));
  return {conjoin(parts), t, r};
}

Interpretation rebase_pairing(const Interpretation& i, const PairingSpec& p) {
  Interpretation out(p);
  for (const auto& [v, value] : i.assignment()) {
    if (v.sort == Sort::Set) {
      out.assign(v, value);
      continue;
    }
    std::vector<HFSet> pairs;
    for (auto w : value.members()) {
      auto parts = i.pairing().unpair(w);
      if (!parts) throw InvalidInterpretation("map value of " + v.display() + " holds a non-pair");
      pairs.push_back(p.pair(parts->first, parts->second));
    }
    out.assign(v, HFSet::of(std::move(pairs)));
  }
  return out;
}

Interpretation transfer_model_backward(const Interpretation& i, const NormalizedConjunction& psi) {
  const Formula f = psi.formula();
  if (!evaluate(i, f)) throw ContractError("transfer_model_backward: interpretation is not a model of psi");
  const FreeVars fv = free_vars(f);

  std::vector<HFSet> values;
  for (const auto& z : fv.set_vars) values.push_back(i.at(Variable::set(z)));
  const HFSet delta = HFSet::of(values);

  const PsiPrime pp = build_psi_prime(psi);
  Interpretation j = rebase_pairing(i.restricted_to(fv.all()), delta_pairing(delta));
  Interpretation out = j;
  for (const auto& m : fv.map_vars) out.assign(pp.renaming.set_var_for(m), j.at(Variable::map(m)));
  std::vector<HFSet> zs;
  for (const auto& z : fv.set_vars) zs.push_back(j.at(Variable::set(z)));
  out.assign(pp.renaming.universe_var(), HFSet::of(zs));

  if (!evaluate(out, pp.formula)) throw ContractError("transfer_model_backward: result does not satisfy psi'");
  return out;
}

Interpretation transfer_model_forward(const Interpretation& j, const NormalizedConjunction& psi,
                                      const RenamingMap& r) {
  const Formula f = psi.formula();
  const PsiPrime pp = build_psi_prime(psi);
  if (!evaluate(j, pp.formula)) throw ContractError("transfer_model_forward: interpretation is not a model of psi'");
  const FreeVars fv = free_vars(f);
  Interpretation out(j.pairing());
  for (const auto& [v, value] : j.assignment())
    if (v.sort == Sort::Set) out.assign(v, value);
  for (const auto& m : fv.map_vars) out.assign(Variable::map(m), j.at(r.set_var_for(m)));
  if (!evaluate(out, f)) throw ContractError("transfer_model_forward: result does not satisfy psi");
  return out;
}

}  // namespace pairsat
