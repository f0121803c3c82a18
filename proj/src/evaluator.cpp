#include "pairsat/evaluator.hpp"

#include <algorithm>

#include "pairsat/error.hpp"

namespace pairsat {

namespace {

bool pair_in(HFSet u, HFSet v, HFSet container, const PairingSpec& p) {
  for (auto w : container.members()) {
    auto parts = p.unpair(w);
    if (parts && parts->first == u && parts->second == v) return true;
  }
  return false;
}

bool sub_proj(HFSet x, HFSet f, bool first, const PairingSpec& p) {
  for (auto u : x.members()) {
    bool found = false;
    for (auto w : f.members()) {
      auto parts = p.unpair(w);
      if (parts && (first ? parts->first : parts->second) == u) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// y ⊆ f[x]
bool sub_image(HFSet y, HFSet f, HFSet x, const PairingSpec& p) {
  for (auto v : y.members()) {
    bool found = false;
    for (auto w : f.members()) {
      auto parts = p.unpair(w);
      if (parts && parts->second == v && x.contains(parts->first)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// h ⊆ {(a,c) : (a,b) ∈ f, (b,c) ∈ g}
bool sub_comp(HFSet h, HFSet f, HFSet g, const PairingSpec& p) {
  for (auto w : h.members()) {
    auto ac = p.unpair(w);
    if (!ac) return false;
    bool found = false;
    for (auto w1 : f.members()) {
      auto ab = p.unpair(w1);
      if (!ab || ab->first != ac->first) continue;
      if (pair_in(ab->second, ac->second, g, p)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool contains_extension_atom(const Formula& f) {
  if (is_extension_atom(f.kind())) return true;
  return std::any_of(f.children().begin(), f.children().end(), contains_extension_atom);
}

CompiledFormula::CompiledFormula(const Formula& f) {
  for (const auto& v : free_vars(f).all()) {
    free_.push_back(v);
    slots_.push_back(v);
  }
  root_ = compile(f);
}

int CompiledFormula::slot_of(const Variable& v) const {
  auto it = std::find(slots_.begin(), slots_.end(), v);
  return it == slots_.end() ? -1 : static_cast<int>(it - slots_.begin());
}

int CompiledFormula::slot(const Variable& v) {
  int s = slot_of(v);
  if (s >= 0) return s;
  slots_.push_back(v);
  return static_cast<int>(slots_.size()) - 1;
}

int CompiledFormula::compile(const Formula& f) {
  Op op;
  op.kind = f.kind();
  const auto& vs = f.vars();
  if (vs.size() > 0) op.a = slot(vs[0]);
  if (vs.size() > 1) op.b = slot(vs[1]);
  if (vs.size() > 2) op.c = slot(vs[2]);
  if (!vs.empty()) op.map_container = vs.back().sort == Sort::Map;
  if (f.children().size() > 0) op.left = compile(f.child(0));
  if (f.children().size() > 1) op.right = compile(f.child(1));
  ops_.push_back(op);
  return static_cast<int>(ops_.size()) - 1;
}

bool CompiledFormula::run(int i, HFSet* env, const PairingSpec& p) const {
  const Op& op = ops_[i];
  switch (op.kind) {
    case Kind::MemberSet: return env[op.b].contains(env[op.a]);
    case Kind::EqualSet:
    case Kind::EqualMap: return env[op.a] == env[op.b];
    case Kind::PairMember: return pair_in(env[op.a], env[op.b], env[op.c], p);
    case Kind::MemberNonpairs: return env[op.b].contains(env[op.a]) && !p.is_pair(env[op.a]);
    case Kind::SubDom: return sub_proj(env[op.a], env[op.b], true, p);
    case Kind::SubRange: return sub_proj(env[op.a], env[op.b], false, p);
    case Kind::SubImage: return sub_image(env[op.a], env[op.b], env[op.c], p);
    case Kind::SubComp: return sub_comp(env[op.a], env[op.b], env[op.c], p);
    case Kind::Not: return !run(op.left, env, p);
    case Kind::And: return run(op.left, env, p) && run(op.right, env, p);
    case Kind::Or: return run(op.left, env, p) || run(op.right, env, p);
    case Kind::Implies: return !run(op.left, env, p) || run(op.right, env, p);
    case Kind::Iff: return run(op.left, env, p) == run(op.right, env, p);
    case Kind::ForallIn:
    case Kind::ExistsIn:
    case Kind::ForallInNonpairs: {
      const bool universal = op.kind != Kind::ExistsIn;
      const HFSet domain = env[op.b];
      const HFSet saved = env[op.a];
      bool result = universal;
      for (auto m : domain.members()) {
        if (op.kind == Kind::ForallInNonpairs && p.is_pair(m)) continue;
        env[op.a] = m;
        if (run(op.left, env, p) != universal) {
          result = !universal;
          break;
        }
      }
      env[op.a] = saved;
      return result;
    }
    case Kind::ForallPairIn:
    case Kind::ExistsPairIn: {
      const bool universal = op.kind == Kind::ForallPairIn;
      const HFSet container = env[op.c];
      const HFSet saved_a = env[op.a], saved_b = env[op.b];
      bool result = universal;
      for (auto w : container.members()) {
        auto parts = p.unpair(w);
        if (!parts) {
          if (op.map_container) {
            env[op.a] = saved_a;
            env[op.b] = saved_b;
            throw EvaluationError("map value " + container.to_string() + " holds non-pair " +
                                  w.to_string());
          }
          continue;
        }
        if (op.a == op.b && parts->first != parts->second) continue;
        env[op.a] = parts->first;
        env[op.b] = parts->second;
        if (run(op.left, env, p) != universal) {
          result = !universal;
          break;
        }
      }
      env[op.a] = saved_a;
      env[op.b] = saved_b;
      return result;
    }
  }
  return false;
}

bool CompiledFormula::eval(std::span<HFSet> env, const PairingSpec& p) const {
  if (env.size() < slots_.size()) throw ContractError("environment smaller than slot count");
  return run(root_, env.data(), p);
}

bool CompiledFormula::eval(const Interpretation& i) const {
  std::vector<HFSet> env(slots_.size());
  for (std::size_t s = 0; s < free_.size(); ++s) env[s] = i.at(free_[s]);
  return run(root_, env.data(), i.pairing());
}

bool evaluate(const Interpretation& i, const Formula& f) {
  if (contains_extension_atom(f))
    throw ContractError("formula has extension literals; use extended_evaluate");
  return CompiledFormula(f).eval(i);
}

bool extended_evaluate(const Interpretation& i, const Formula& f) {
  return CompiledFormula(f).eval(i);
}

}  // namespace pairsat
