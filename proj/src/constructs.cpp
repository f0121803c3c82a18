#include "pairsat/constructs.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <functional>
#include <map>
#include <set>

#include "pairsat/error.hpp"
#include "pairsat/evaluator.hpp"
#include "pairsat/solver.hpp"
#include "pairsat/syntax.hpp"

namespace pairsat {

namespace {

enum class Row {
  EmptySet, Subseteq, Union, Inter, Diff, Singleton,
  MapEmpty, MapSubseteq, MapUnion, MapInter, MapDiff, MapSingleton,
  Inverse, Cartesian, RestrictLeft, RestrictRight, RestrictBoth, IdentityOn, Sym,
  SingleValued, Injective, Bijective, IsTransitive, IsIrreflexive, IsAsymmetric,
  CompSubseteq, DomSubseteq, RangeSubseteq, ImageSubseteq,
};

// A template part is either formula text over the row's parameters or a
// call to another row with parameter names as arguments.
struct Part {
  std::string text;
  std::string call;
  std::vector<std::string> call_args;
};

Part txt(std::string t) { return {std::move(t), "", {}}; }
Part call(std::string n, std::vector<std::string> a) { return {"", std::move(n), std::move(a)}; }

struct RowDef {
  Row row;
  ConstructInfo info;
  std::vector<Part> parts;
};

const std::vector<RowDef>& rows() {
  const Sort S = Sort::Set, M = Sort::Map;
  static const std::vector<RowDef> table = {
      {Row::EmptySet, {"empty_set", {S}, {"x"}, "x = ∅"}, {txt("forall x' in x . x' != x'")}},
      {Row::Subseteq, {"subseteq", {S, S}, {"x", "y"}, "x ⊆ y"}, {txt("forall x' in x . x' in y")}},
      {Row::Union,
       {"union", {S, S, S}, {"x", "y", "z"}, "x = y ∪ z"},
       {call("subseteq", {"y", "x"}), call("subseteq", {"z", "x"}), txt("forall x' in x . x' in y or x' in z")}},
      {Row::Inter,
       {"inter", {S, S, S}, {"x", "y", "z"}, "x = y ∩ z"},
       {call("subseteq", {"x", "y"}), call("subseteq", {"x", "z"}), txt("forall y' in y . y' in z -> y' in x")}},
      {Row::Diff,
       {"diff", {S, S, S}, {"x", "y", "z"}, "x = y ∖ z"},
       {call("subseteq", {"x", "y"}), txt("forall y' in y . y' in x <-> y' notin z")}},
      {Row::Singleton,
       {"singleton", {S, S}, {"x", "y"}, "x = {y}"},
       {txt("y in x"), txt("forall x' in x . x' = y")}},
      {Row::MapEmpty, {"map_empty", {M}, {"f"}, "f = ∅"}, {txt("forall [x,y] in @f . x != x")}},
      {Row::MapSubseteq,
       {"map_subseteq", {M, M}, {"f", "g"}, "f ⊆ g"},
       {txt("forall [x,y] in @f . [x,y] in @g")}},
      {Row::MapUnion,
       {"map_union", {M, M, M}, {"f", "g", "h"}, "f = g ∪ h"},
       {call("map_subseteq", {"g", "f"}), call("map_subseteq", {"h", "f"}),
        txt("forall [x,y] in @f . [x,y] in @g or [x,y] in @h")}},
      {Row::MapInter,
       {"map_inter", {M, M, M}, {"f", "g", "h"}, "f = g ∩ h"},
       {call("map_subseteq", {"f", "g"}), call("map_subseteq", {"f", "h"}),
        txt("forall [x,y] in @g . [x,y] in @h -> [x,y] in @f")}},
      {Row::MapDiff,
       {"map_diff", {M, M, M}, {"f", "g", "h"}, "f = g ∖ h"},
       {call("map_subseteq", {"f", "g"}), txt("forall [x,y] in @g . [x,y] in @f <-> [x,y] notin @h")}},
      {Row::MapSingleton,
       {"map_singleton", {M, S, S}, {"f", "x", "y"}, "f = {[x,y]}"},
       {txt("[x,y] in @f"), txt("forall [x',y'] in @f . x' = x and y' = y")}},
      {Row::Inverse,
       {"inverse", {M, M}, {"f", "g"}, "f = g⁻¹"},
       {txt("forall [x,y] in @f . [y,x] in @g"), txt("forall [x,y] in @g . [y,x] in @f")}},
      {Row::Cartesian,
       {"cartesian", {M, S, S}, {"f", "x", "y"}, "f = x × y"},
       {txt("forall x' in x . forall y' in y . [x',y'] in @f"),
        txt("forall [x',y'] in @f . x' in x and y' in y")}},
      {Row::RestrictLeft,
       {"restrict_left", {M, M, S}, {"f", "g", "x"}, "f = g restricted to domain x"},
       {call("map_subseteq", {"f", "g"}), txt("forall [x',y'] in @g . [x',y'] in @f <-> x' in x")}},
      {Row::RestrictRight,
       {"restrict_right", {M, M, S}, {"f", "g", "y"}, "f = g restricted to range y"},
       {call("map_subseteq", {"f", "g"}), txt("forall [x',y'] in @g . [x',y'] in @f <-> y' in y")}},
      {Row::RestrictBoth,
       {"restrict_both", {M, M, S, S}, {"f", "g", "x", "y"}, "f = g restricted to x × y"},
       {call("map_subseteq", {"f", "g"}), txt("forall [x',y'] in @g . [x',y'] in @f <-> x' in x and y' in y")}},
      {Row::IdentityOn,
       {"identity_on", {M, S}, {"f", "x"}, "f = id_x"},
       {txt("forall x' in x . [x',x'] in @f"), txt("forall [x',y'] in @f . x' = y' and x' in x")}},
      {Row::Sym,
       {"sym", {M, M}, {"f", "g"}, "f = sym(g)"},
       {txt("forall [x,y] in @f . [x,y] in @g or [y,x] in @g"),
        txt("forall [x,y] in @g . [x,y] in @f and [y,x] in @f")}},
      {Row::SingleValued,
       {"single_valued", {M}, {"f"}, "f is single-valued"},
       {txt("forall [x,y] in @f . forall [x',y'] in @f . x = x' -> y = y'")}},
      {Row::Injective,
       {"injective", {M}, {"f"}, "f is injective"},
       {txt("forall [x,y] in @f . forall [x',y'] in @f . y = y' -> x = x'")}},
      {Row::Bijective,
       {"bijective", {M}, {"f"}, "f is a bijection onto its range"},
       {txt("forall [x,y] in @f . forall [x',y'] in @f . x = x' <-> y = y'")}},
      {Row::IsTransitive,
       {"is_transitive", {M}, {"f"}, "f is transitive"},
       {txt("forall [x,y] in @f . forall [x',y'] in @f . y = x' -> [x,y'] in @f")}},
      {Row::IsIrreflexive,
       {"is_irreflexive", {M}, {"f"}, "f is irreflexive"},
       {txt("forall [x,y] in @f . x != y")}},
      {Row::IsAsymmetric,
       {"is_asymmetric", {M}, {"f"}, "f has no two-way pair [x,y],[y,x] with x ≠ y"},
       {txt("forall [x,y] in @f . x = y or [y,x] notin @f")}},
      {Row::CompSubseteq,
       {"comp_subseteq", {M, M, M}, {"f", "g", "h"}, "f ∘ g ⊆ h"},
       {txt("forall [x,y] in @f . forall [x',y'] in @g . y = x' -> [x,y'] in @h")}},
      {Row::DomSubseteq,
       {"dom_subseteq", {M, S}, {"f", "x"}, "dom(f) ⊆ x"},
       {txt("forall [x',y'] in @f . x' in x")}},
      {Row::RangeSubseteq,
       {"range_subseteq", {M, S}, {"f", "y"}, "range(f) ⊆ y"},
       {txt("forall [x',y'] in @f . y' in y")}},
      {Row::ImageSubseteq,
       {"image_subseteq", {M, S, S}, {"f", "x", "y"}, "f[x] ⊆ y"},
       {txt("forall [x',y'] in @f . x' in x -> y' in y")}},
  };
  return table;
}

const RowDef& row_def(const std::string& name) {
  for (const auto& r : rows())
    if (r.info.name == name) return r;
  throw ContractError("unknown construct '" + name + "'");
}

Variable param_var(const RowDef& d, std::size_t k) { return {d.info.params[k], d.info.sorts[k]}; }

// Renames every occurrence of the given names, whatever their sort.
Formula rename_names(const Formula& f, const std::map<std::string, std::string>& m) {
  std::vector<Variable> vars = f.vars();
  for (auto& v : vars)
    if (auto it = m.find(v.name); it != m.end()) v.name = it->second;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(rename_names(c, m));
  return Formula::make(f.kind(), std::move(vars), std::move(kids));
}

void collect_bound(const Formula& f, std::set<std::string>& out) {
  for (const auto& v : f.bound_vars()) out.insert(v.name);
  for (const auto& c : f.children()) collect_bound(c, out);
}

Formula expand_avoiding(const ConstructCall& call, const std::set<std::string>& extra);

// Row body over the row's own parameter names.
Formula template_formula(const RowDef& d) {
  std::vector<Formula> parts;
  for (const auto& p : d.parts) {
    if (p.call.empty()) {
      parts.push_back(parse_formula(p.text));
      continue;
    }
    const RowDef& sub = row_def(p.call);
    std::vector<Variable> args;
    for (std::size_t k = 0; k < p.call_args.size(); ++k) args.push_back({p.call_args[k], sub.info.sorts[k]});
    parts.push_back(expand_avoiding(ConstructCall{sub.info.name, args}, {d.info.params.begin(), d.info.params.end()}));
  }
  return conjoin(parts);
}

}  // namespace

const std::vector<ConstructInfo>& construct_table() {
  static const std::vector<ConstructInfo> infos = [] {
    std::vector<ConstructInfo> out;
    for (const auto& r : rows()) out.push_back(r.info);
    return out;
  }();
  return infos;
}

const ConstructInfo& construct_info(const std::string& name) { return row_def(name).info; }

ConstructCall make_call(const std::string& name, const std::vector<std::string>& args) {
  const RowDef& d = row_def(name);
  if (args.size() != d.info.sorts.size())
    throw ContractError(name + " takes " + std::to_string(d.info.sorts.size()) + " arguments, got " +
                        std::to_string(args.size()));
  ConstructCall c{name, {}};
  for (std::size_t k = 0; k < args.size(); ++k) {
    std::string a = args[k];
    if (!a.empty() && a[0] == '@') {
      if (d.info.sorts[k] != Sort::Map)
        throw ContractError(name + ": argument " + std::to_string(k + 1) + " must be a set variable");
      a.erase(0, 1);
    }
    if (a.empty()) throw ContractError(name + ": empty argument name");
    c.args.push_back({a, d.info.sorts[k]});
  }
  return c;
}

Formula expand(const ConstructCall& call) { return expand_avoiding(call, {}); }

namespace {

Formula expand_avoiding(const ConstructCall& call, const std::set<std::string>& extra) {
  const RowDef& d = row_def(call.name);
  if (call.args.size() != d.info.sorts.size())
    throw ContractError(call.name + " takes " + std::to_string(d.info.sorts.size()) + " arguments");
  for (std::size_t k = 0; k < call.args.size(); ++k)
    if (call.args[k].sort != d.info.sorts[k])
      throw ContractError(call.name + ": argument " + call.args[k].display() + " has the wrong sort");

  Formula body = template_formula(d);

  std::set<std::string> bound;
  collect_bound(body, bound);
  std::set<std::string> avoid(d.info.params.begin(), d.info.params.end());
  avoid.insert(extra.begin(), extra.end());
  for (const auto& a : call.args) avoid.insert(a.name);
  std::set<std::string> kept;
  for (const auto& b : bound)
    if (!avoid.count(b)) kept.insert(b);
  std::set<std::string> used = avoid;
  used.insert(kept.begin(), kept.end());
  std::map<std::string, std::string> fresh;
  for (const auto& b : bound) {
    if (kept.count(b)) continue;
    std::string n = b + "'";
    while (used.count(n)) n += "'";
    used.insert(n);
    fresh[b] = n;
  }
  if (!fresh.empty()) body = rename_names(body, fresh);

  std::map<Variable, Variable> subst;
  for (std::size_t k = 0; k < call.args.size(); ++k) subst[param_var(d, k)] = call.args[k];
  return substitute_free(body, subst);
}

}  // namespace

namespace {

// Oracle value model: elements are indexed 0..n-1 (n ≤ 64); a set is its
// member mask plus its own index; a relation is one successor mask per row.
struct OVal {
  std::uint64_t mem = 0;
  int self = -1;
  const std::uint64_t* rel = nullptr;
};

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

bool rel_eq(const std::uint64_t* a, const std::uint64_t* b, int n) {
  for (int i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool rel_sub(const std::uint64_t* a, const std::uint64_t* b, int n) {
  for (int i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

void transpose(const std::uint64_t* a, std::uint64_t* out, int n) {
  std::fill(out, out + n, 0);
  for (int i = 0; i < n; ++i)
    for (std::uint64_t r = a[i]; r; r &= r - 1) out[std::countr_zero(r)] |= bit(i);
}

// {(a,c) : (a,b) ∈ f, (b,c) ∈ g}
void compose(const std::uint64_t* f, const std::uint64_t* g, std::uint64_t* out, int n) {
  for (int i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::uint64_t r = f[i]; r; r &= r - 1) acc |= g[std::countr_zero(r)];
    out[i] = acc;
  }
}

bool oracle(Row row, const OVal* v, int n) {
  std::array<std::uint64_t, 64> t{};
  auto* w = t.data();
  switch (row) {
    case Row::EmptySet: return v[0].mem == 0;
    case Row::Subseteq: return (v[0].mem & ~v[1].mem) == 0;
    case Row::Union: return v[0].mem == (v[1].mem | v[2].mem);
    case Row::Inter: return v[0].mem == (v[1].mem & v[2].mem);
    case Row::Diff: return v[0].mem == (v[1].mem & ~v[2].mem);
    case Row::Singleton: return v[0].mem == bit(v[1].self);
    case Row::MapEmpty:
      for (int i = 0; i < n; ++i)
        if (v[0].rel[i]) return false;
      return true;
    case Row::MapSubseteq: return rel_sub(v[0].rel, v[1].rel, n);
    case Row::MapUnion:
      for (int i = 0; i < n; ++i) w[i] = v[1].rel[i] | v[2].rel[i];
      return rel_eq(v[0].rel, w, n);
    case Row::MapInter:
      for (int i = 0; i < n; ++i) w[i] = v[1].rel[i] & v[2].rel[i];
      return rel_eq(v[0].rel, w, n);
    case Row::MapDiff:
      for (int i = 0; i < n; ++i) w[i] = v[1].rel[i] & ~v[2].rel[i];
      return rel_eq(v[0].rel, w, n);
    case Row::MapSingleton:
      w[v[1].self] = bit(v[2].self);
      return rel_eq(v[0].rel, w, n);
    case Row::Inverse: transpose(v[1].rel, w, n); return rel_eq(v[0].rel, w, n);
    case Row::Cartesian:
      for (int i = 0; i < n; ++i) w[i] = (v[1].mem & bit(i)) ? v[2].mem : 0;
      return rel_eq(v[0].rel, w, n);
    case Row::RestrictLeft:
      for (int i = 0; i < n; ++i) w[i] = (v[2].mem & bit(i)) ? v[1].rel[i] : 0;
      return rel_eq(v[0].rel, w, n);
    case Row::RestrictRight:
      for (int i = 0; i < n; ++i) w[i] = v[1].rel[i] & v[2].mem;
      return rel_eq(v[0].rel, w, n);
    case Row::RestrictBoth:
      for (int i = 0; i < n; ++i) w[i] = (v[2].mem & bit(i)) ? (v[1].rel[i] & v[3].mem) : 0;
      return rel_eq(v[0].rel, w, n);
    case Row::IdentityOn:
      for (int i = 0; i < n; ++i) w[i] = v[1].mem & bit(i);
      return rel_eq(v[0].rel, w, n);
    case Row::Sym:
      transpose(v[1].rel, w, n);
      for (int i = 0; i < n; ++i) w[i] |= v[1].rel[i];
      return rel_eq(v[0].rel, w, n);
    case Row::SingleValued:
      for (int i = 0; i < n; ++i)
        if (std::popcount(v[0].rel[i]) > 1) return false;
      return true;
    case Row::Injective:
      transpose(v[0].rel, w, n);
      for (int i = 0; i < n; ++i)
        if (std::popcount(w[i]) > 1) return false;
      return true;
    case Row::Bijective: {
      OVal one = v[0];
      return oracle(Row::SingleValued, &one, n) && oracle(Row::Injective, &one, n);
    }
    case Row::IsTransitive: compose(v[0].rel, v[0].rel, w, n); return rel_sub(w, v[0].rel, n);
    case Row::IsIrreflexive:
      for (int i = 0; i < n; ++i)
        if (v[0].rel[i] & bit(i)) return false;
      return true;
    case Row::IsAsymmetric:
      transpose(v[0].rel, w, n);
      for (int i = 0; i < n; ++i)
        if (v[0].rel[i] & w[i] & ~bit(i)) return false;
      return true;
    case Row::CompSubseteq: compose(v[0].rel, v[1].rel, w, n); return rel_sub(w, v[2].rel, n);
    case Row::DomSubseteq:
      for (int i = 0; i < n; ++i)
        if (v[0].rel[i] && !(v[1].mem & bit(i))) return false;
      return true;
    case Row::RangeSubseteq:
      for (int i = 0; i < n; ++i)
        if (v[0].rel[i] & ~v[1].mem) return false;
      return true;
    case Row::ImageSubseteq:
      for (int i = 0; i < n; ++i)
        if ((v[1].mem & bit(i)) && (v[0].rel[i] & ~v[2].mem)) return false;
      return true;
  }
  return false;
}

struct Index {
  std::map<HFSet, int> pos;
  int of(HFSet s) const { return pos.at(s); }
  void add(HFSet s) {
    if (pos.count(s)) return;
    if (pos.size() == 64) throw ResourceError("oracle_check: more than 64 distinct elements involved");
    const int k = static_cast<int>(pos.size());
    pos.emplace(s, k);
  }
  int size() const { return static_cast<int>(pos.size()); }
};

std::uint64_t member_mask(const Index& ix, HFSet s) {
  std::uint64_t m = 0;
  for (auto e : s.members()) m |= bit(ix.of(e));
  return m;
}

std::vector<std::uint64_t> relation_rows(const Index& ix, HFSet value, const PairingSpec& p) {
  std::vector<std::uint64_t> rows(64, 0);
  for (auto w : value.members()) {
    auto parts = p.unpair(w);
    if (!parts) throw InvalidInterpretation("map value holds a non-pair");
    rows[ix.of(parts->first)] |= bit(ix.of(parts->second));
  }
  return rows;
}

}  // namespace

bool oracle_check(const ConstructCall& call, const Interpretation& i) {
  const RowDef& d = row_def(call.name);
  if (call.args.size() != d.info.sorts.size()) throw ContractError(call.name + ": wrong arity");
  Index ix;
  for (const auto& a : call.args) {
    HFSet v = i.at(a);
    if (a.sort == Sort::Set) {
      ix.add(v);
      for (auto e : v.members()) ix.add(e);
    } else {
      for (auto w : v.members()) {
        auto parts = i.pairing().unpair(w);
        if (!parts) throw InvalidInterpretation("map value of " + a.display() + " holds a non-pair");
        ix.add(parts->first);
        ix.add(parts->second);
      }
    }
  }
  std::vector<std::vector<std::uint64_t>> rels;
  rels.reserve(call.args.size());
  std::vector<OVal> vals;
  for (const auto& a : call.args) {
    HFSet v = i.at(a);
    OVal o;
    if (a.sort == Sort::Set) {
      o.mem = member_mask(ix, v);
      o.self = ix.of(v);
    } else {
      rels.push_back(relation_rows(ix, v, i.pairing()));
      o.rel = rels.back().data();
    }
    vals.push_back(o);
  }
  return oracle(d.row, vals.data(), std::max(ix.size(), 1));
}

SweepReport sweep_construct(const std::string& name, unsigned level, unsigned breadth) {
  const auto start = std::chrono::steady_clock::now();
  const RowDef& d = row_def(name);
  const std::size_t arity = d.info.sorts.size();

  std::vector<Variable> args;
  for (std::size_t k = 0; k < arity; ++k) args.push_back(param_var(d, k));
  const Formula f = expand(ConstructCall{name, args});
  const CompiledFormula cf(f);
  const PairingSpec kur = PairingSpec::kuratowski();

  const std::vector<HFSet> sets = universe(level);
  Index ix;
  for (auto s : sets) ix.add(s);
  for (auto s : sets)
    for (auto e : s.members()) ix.add(e);
  const int n = ix.size();

  const auto& maps = map_candidates(level, breadth);
  std::vector<std::vector<std::uint64_t>> map_rows;
  map_rows.reserve(maps.size());
  for (auto m : maps) map_rows.push_back(relation_rows(ix, m, kur));

  std::vector<OVal> set_vals;
  for (auto s : sets) set_vals.push_back({member_mask(ix, s), ix.of(s), nullptr});

  std::vector<std::size_t> domain(arity);
  std::vector<int> slot(arity);
  for (std::size_t k = 0; k < arity; ++k) {
    domain[k] = d.info.sorts[k] == Sort::Set ? sets.size() : maps.size();
    slot[k] = cf.slot_of(args[k]);
  }

  SweepReport rep;
  rep.name = name;
  std::vector<HFSet> env(cf.slot_count());
  std::vector<OVal> vals(arity);
  std::vector<std::size_t> idx(arity, 0);
  auto load = [&](std::size_t k) {
    if (d.info.sorts[k] == Sort::Set) {
      vals[k] = set_vals[idx[k]];
      if (slot[k] >= 0) env[slot[k]] = sets[idx[k]];
    } else {
      vals[k] = {0, -1, map_rows[idx[k]].data()};
      if (slot[k] >= 0) env[slot[k]] = maps[idx[k]];
    }
  };
  for (std::size_t k = 0; k < arity; ++k) load(k);
  while (true) {
    const bool by_formula = cf.eval(env, kur);
    const bool by_oracle = oracle(d.row, vals.data(), n);
    ++rep.interpretations;
    if (by_formula == by_oracle) {
      ++rep.agreements;
    } else if (!rep.first_mismatch) {
      Interpretation i(kur);
      for (std::size_t k = 0; k < arity; ++k)
        i.assign(args[k], d.info.sorts[k] == Sort::Set ? sets[idx[k]] : maps[idx[k]]);
      rep.first_mismatch = i;
    }
    std::size_t k = arity;
    while (k > 0) {
      --k;
      if (++idx[k] < domain[k]) {
        load(k);
        break;
      }
      idx[k] = 0;
      load(k);
      if (k == 0) {
        k = arity + 1;
        break;
      }
    }
    if (k == arity + 1) break;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

std::string aux_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base;
  for (int k = 1; avoid.count(n); ++k) n = base + "$" + std::to_string(k);
  return n;
}

}  // namespace

RewriteResult rewrite_dom_literal(DomRewrite kind, const Variable& x, const Variable& f) {
  if (x.sort != Sort::Set || f.sort != Sort::Map)
    throw ContractError("rewrite_dom_literal expects a set variable and a map variable");
  std::set<std::string> avoid{x.name, f.name};
  const Variable inv = Variable::map(aux_name("inv$" + f.name, avoid));
  avoid.insert(inv.name);
  const Formula inverse = expand(ConstructCall{"inverse", {inv, f}});
  switch (kind) {
    case DomRewrite::Range:
    {
      std::vector<Formula> parts{Formula::sub_range(x, inv)};
      for (const auto& c : conjuncts_of(inverse)) parts.push_back(c);
      return {conjoin(parts), {inv}};
    }
    case DomRewrite::Composition: {
      const Variable id = Variable::map(aux_name("id$" + x.name, avoid));
      const Formula ident = expand(ConstructCall{"identity_on", {id, x}});
      std::vector<Formula> parts = conjuncts_of(ident);
      for (const auto& c : conjuncts_of(inverse)) parts.push_back(c);
      parts.push_back(Formula::sub_comp(id, f, inv));
      return {conjoin(parts), {id, inv}};
    }
    case DomRewrite::Image: {
      const Variable r = Variable::set(aux_name("R$" + f.name, avoid));
      std::vector<Formula> parts = conjuncts_of(inverse);
      parts.push_back(Formula::sub_image(x, inv, r));
      return {conjoin(parts), {inv, r}};
    }
  }
  throw ContractError("unknown rewrite kind");
}

Interpretation dom_rewrite_witness(DomRewrite kind, const Interpretation& i, const Variable& x, const Variable& f) {
  const RewriteResult rr = rewrite_dom_literal(kind, x, f);
  const PairingSpec& p = i.pairing();
  std::vector<HFSet> inv_pairs, id_pairs, range;
  for (auto w : i.at(f).members()) {
    auto parts = p.unpair(w);
    if (!parts) throw InvalidInterpretation("map value of " + f.display() + " holds a non-pair");
    inv_pairs.push_back(p.pair(parts->second, parts->first));
    range.push_back(parts->second);
  }
  for (auto a : i.at(x).members()) id_pairs.push_back(p.pair(a, a));
  Interpretation out = i;
  for (const auto& v : rr.auxiliaries) {
    if (v.name.rfind("inv$", 0) == 0) out.assign(v, HFSet::of(inv_pairs));
    else if (v.name.rfind("id$", 0) == 0) out.assign(v, HFSet::of(id_pairs));
    else out.assign(v, HFSet::of(range));
  }
  return out;
}

SweepReport sweep_dom_rewrite(DomRewrite kind, unsigned level, unsigned breadth) {
  if (kind == DomRewrite::Image) throw ContractError("the image rewrite is only equisatisfiable");
  const auto start = std::chrono::steady_clock::now();
  const Variable x = Variable::set("x"), f = Variable::map("f");
  const RewriteResult rr = rewrite_dom_literal(kind, x, f);
  const Formula literal = Formula::sub_dom(x, f);
  const std::vector<Formula> parts = conjuncts_of(rr.formula);
  std::vector<std::set<Variable>> part_vars;
  for (const auto& c : parts) part_vars.push_back(free_vars(c).all());
  std::vector<Variable> aux_order;
  for (const auto& a : rr.auxiliaries) aux_order.push_back(a);
  std::sort(aux_order.begin(), aux_order.end(), [](const Variable& a, const Variable& b) {
    return (a.name.rfind("inv$", 0) == 0) > (b.name.rfind("inv$", 0) == 0);
  });

  const PairingSpec kur = PairingSpec::kuratowski();
  const auto sets = universe(level);
  const auto& maps = map_candidates(level, breadth);

  SweepReport rep;
  rep.name = kind == DomRewrite::Range ? "range-rewrite" : "composition-rewrite";
  for (auto xv : sets) {
    for (auto fv : maps) {
      Interpretation base(kur);
      base.assign(x, xv);
      base.assign(f, fv);
      const bool lit = extended_evaluate(base, literal);
      // ∃ auxiliaries over the bound: depth-first, pruning each conjunct once
      // its auxiliaries are all assigned.
      bool exists = false;
      std::function<void(std::size_t, const Interpretation&)> go = [&](std::size_t k, const Interpretation& cur) {
        if (exists) return;
        for (std::size_t c = 0; c < parts.size(); ++c) {
          bool ready = true, fresh = false;
          for (const auto& v : part_vars[c]) {
            if (!cur.has(v)) ready = false;
            if (k > 0 && v == aux_order[k - 1]) fresh = true;
          }
          if (ready && (fresh || k == 0) && !extended_evaluate(cur, parts[c])) return;
        }
        if (k == aux_order.size()) {
          exists = true;
          return;
        }
        for (auto cand : maps) {
          Interpretation next = cur;
          next.assign(aux_order[k], cand);
          go(k + 1, next);
          if (exists) return;
        }
      };
      go(0, base);
      const bool witness = extended_evaluate(dom_rewrite_witness(kind, base, x, f), rr.formula);
      ++rep.interpretations;
      if (lit == exists && lit == witness) {
        ++rep.agreements;
      } else if (!rep.first_mismatch) {
        rep.first_mismatch = base;
      }
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace pairsat
