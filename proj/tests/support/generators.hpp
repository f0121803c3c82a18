#pragma once

// Random formula generators shared by unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "pairsat/formula.hpp"

namespace gen {

using pairsat::Formula;
using pairsat::Kind;
using pairsat::Variable;

struct Vocabulary {
  std::vector<std::string> sets{"x", "y", "z"};
  std::vector<std::string> maps{"f"};
};

class Generator {
 public:
  explicit Generator(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  Formula atom(const std::vector<std::string>& sets, const std::vector<std::string>& maps,
               bool allow_map_eq = true) {
    auto sv = [&] { return Variable::set(pick(sets)); };
    int choices = maps.empty() ? 2 : (allow_map_eq ? 4 : 3);
    switch (uniform(0, choices - 1)) {
      case 0: return Formula::member(sv(), sv());
      case 1: return Formula::equal(sv(), sv());
      case 2: return Formula::pair_member(sv(), sv(), Variable::map(pick(maps)));
      default: return Formula::equal_map(Variable::map(pick(maps)), Variable::map(pick(maps)));
    }
  }

  Formula connective(Formula a, Formula b) {
    switch (uniform(0, 3)) {
      case 0: return Formula::conj(a, b);
      case 1: return Formula::disj(a, b);
      case 2: return Formula::implies(a, b);
      default: return Formula::iff(a, b);
    }
  }

  Formula quantifier_free(int depth, const std::vector<std::string>& sets,
                          const std::vector<std::string>& maps) {
    if (depth <= 0 || coin(0.3)) {
      Formula a = atom(sets, maps);
      return coin(0.25) ? Formula::negation(a) : a;
    }
    if (coin(0.15)) return Formula::negation(quantifier_free(depth - 1, sets, maps));
    return connective(quantifier_free(depth - 1, sets, maps), quantifier_free(depth - 1, sets, maps));
  }

  /// Simple-prenex formula whose domains are drawn from the free vocabulary
  /// and whose bound variables are fresh names `<prefix>1, <prefix>2, ...`.
  Formula prenex(int prefix_len, bool universal, const Vocabulary& v, int matrix_depth,
                 const std::string& bound_prefix = "b") {
    struct Binder {
      bool pair;
      std::vector<std::string> bound;
      std::string domain;
    };
    std::vector<Binder> binders;
    std::vector<std::string> scope_sets = v.sets;
    int counter = 0;
    for (int i = 0; i < prefix_len; ++i) {
      Binder b;
      b.pair = !v.maps.empty() && coin(0.4);
      if (b.pair) {
        b.bound = {bound_prefix + std::to_string(++counter), bound_prefix + std::to_string(++counter)};
        b.domain = pick(v.maps);
      } else {
        b.bound = {bound_prefix + std::to_string(++counter)};
        b.domain = pick(v.sets);
      }
      for (const auto& n : b.bound) scope_sets.push_back(n);
      binders.push_back(b);
    }
    Formula body = quantifier_free(matrix_depth, scope_sets, v.maps);
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      if (it->pair) {
        Variable a = Variable::set(it->bound[0]), b = Variable::set(it->bound[1]);
        Variable f = Variable::map(it->domain);
        body = universal ? Formula::forall_pair_in(a, b, f, body) : Formula::exists_pair_in(a, b, f, body);
      } else {
        Variable a = Variable::set(it->bound[0]), d = Variable::set(it->domain);
        body = universal ? Formula::forall_in(a, d, body) : Formula::exists_in(a, d, body);
      }
    }
    return body;
  }

  /// Boolean combination of quantifier-free atoms and simple-prenex formulas.
  Formula full(int depth, const Vocabulary& v, int max_prefix = 2) {
    if (depth <= 0 || coin(0.3)) {
      Formula base = coin(0.5) ? atom(v.sets, v.maps)
                               : prenex(uniform(1, max_prefix), coin(), v, 1, "q" + std::to_string(uniform(0, 9)) + "_");
      return coin(0.25) ? Formula::negation(base) : base;
    }
    if (coin(0.15)) return Formula::negation(full(depth - 1, v, max_prefix));
    return connective(full(depth - 1, v, max_prefix), full(depth - 1, v, max_prefix));
  }

  /// Conjunction of universal simple-prenex formulas and literals, with all
  /// bound variables distinct across conjuncts.
  Formula normalized(int conjuncts, const Vocabulary& v, int max_prefix = 2, int matrix_depth = 1) {
    std::vector<Formula> parts;
    for (int i = 0; i < conjuncts; ++i) {
      if (coin(0.3)) {
        Formula a = atom(v.sets, v.maps);
        parts.push_back(coin(0.3) ? Formula::negation(a) : a);
      } else {
        parts.push_back(prenex(uniform(1, max_prefix), true, v, matrix_depth, "b" + std::to_string(i) + "_"));
      }
    }
    return pairsat::conjoin(parts);
  }

  /// Arbitrary (not necessarily valid) formula, for syntax round trips.
  Formula any(int depth, const Vocabulary& v) {
    if (depth <= 0 || coin(0.25)) {
      if (coin(0.2) && !v.maps.empty()) {
        auto sv = [&] { return Variable::set(pick(v.sets)); };
        auto mv = [&] { return Variable::map(pick(v.maps)); };
        switch (uniform(0, 4)) {
          case 0: return Formula::sub_dom(sv(), mv());
          case 1: return Formula::sub_range(sv(), mv());
          case 2: return Formula::sub_image(sv(), mv(), sv());
          case 3: return Formula::sub_comp(mv(), mv(), mv());
          default: return Formula::member_nonpairs(sv(), sv());
        }
      }
      return atom(v.sets, v.maps);
    }
    switch (uniform(0, 7)) {
      case 0: return Formula::negation(any(depth - 1, v));
      case 1: return Formula::forall_in(Variable::set(pick(v.sets)), Variable::set(pick(v.sets)), any(depth - 1, v));
      case 2: return Formula::exists_in(Variable::set(pick(v.sets)), Variable::set(pick(v.sets)), any(depth - 1, v));
      case 3:
        if (v.maps.empty()) break;
        return Formula::forall_pair_in(Variable::set(pick(v.sets)), Variable::set(pick(v.sets)),
                                       Variable::map(pick(v.maps)), any(depth - 1, v));
      case 4:
        return Formula::forall_in_nonpairs(Variable::set(pick(v.sets)), Variable::set(pick(v.sets)),
                                           any(depth - 1, v));
      default: break;
    }
    return connective(any(depth - 1, v), any(depth - 1, v));
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace gen
