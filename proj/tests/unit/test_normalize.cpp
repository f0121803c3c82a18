#include <doctest.h>

#include "pairsat/error.hpp"
#include "pairsat/evaluator.hpp"
#include "pairsat/normalize.hpp"
#include "pairsat/solver.hpp"
#include "pairsat/syntax.hpp"
#include "pairsat/validate.hpp"
#include "support/generators.hpp"

using namespace pairsat;

namespace {
Formula P(const char* s) { return parse_formula(s); }

// Models of `f` over the variables of `g` (extra variables get every value).
bool implies_on_models(const Formula& conj, const Formula& f, const SearchBound& b) {
  for (const auto& m : oracle_enumerate(conj, b))
    if (!extended_evaluate(m, f)) return false;
  return true;
}
}  // namespace

TEST_CASE("eliminate_existential") {
  CHECK(print_formula(eliminate_existential(P("exists x in z . x = x"))) == "x#1 in z and x#1 = x#1");
  CHECK(print_formula(eliminate_existential(P("exists [x,y] in @f . x in w"))) ==
        "[x#1,y#1] in @f and x#1 in w");
  CHECK(print_formula(eliminate_existential(P("exists x in z . exists y in w . x = y"))) ==
        "x#1 in z and y#1 in w and x#1 = y#1");
  CHECK_THROWS_AS(eliminate_existential(P("forall x in z . x = x")), ContractError);
  CHECK_THROWS_AS(eliminate_existential(P("exists x in z . exists y in x . x = y")), ContractError);
  // fresh names avoid existing ones
  CHECK(print_formula(eliminate_existential(P("exists x in z . x = x#1"))) == "x#2 in z and x#2 = x#1");
}

TEST_CASE("eliminate_existential preserves satisfiability") {
  gen::Generator g(21);
  gen::Vocabulary v{{"x", "y"}, {"f"}};
  SearchBound b{2, 1, 10'000'000};
  for (int i = 0; i < 200; ++i) {
    Formula f = g.prenex(g.uniform(1, 2), false, v, 1);
    Formula e = eliminate_existential(f);
    bool sat_f = !oracle_enumerate(f, b).empty();
    bool sat_e = !oracle_enumerate(e, b).empty();
    CHECK_MESSAGE(sat_f == sat_e, print_formula(f));
    CHECK(implies_on_models(e, f, b));
  }
}

TEST_CASE("skeleton") {
  Formula a = P("forall x in y . x = x");
  Skeleton s = skeleton(Formula::disj(a, Formula::negation(a)));
  CHECK(s.proposition.to_string() == "p1 or not p1");
  CHECK(s.substitution.size() == 1);
  CHECK(s.substitution[0] == a);
  CHECK(skeleton(a).proposition.to_string() == "p1");
  gen::Generator g(5);
  gen::Vocabulary v;
  for (int i = 0; i < 300; ++i) {
    Formula f = g.full(4, v);
    CHECK(skeleton(f).apply() == f);
  }
}

TEST_CASE("normalized_conjunctions: examples") {
  Formula a = P("forall x in y . x = x");
  CHECK(normalized_conjunctions(Formula::conj(a, Formula::negation(a))).empty());
  auto ncs = normalized_conjunctions(P("not (forall x in z . x != x)"));
  REQUIRE(ncs.size() == 1);
  CHECK(print_formula(ncs[0].formula()) == "x#1 in z and x#1 = x#1");
  ncs = normalized_conjunctions(P("a in b or a = b"));
  REQUIRE(ncs.size() == 3);
  CHECK(print_formula(ncs[0].formula()) == "a in b and a = b");
  CHECK(print_formula(ncs[1].formula()) == "a in b and a != b");
  CHECK(print_formula(ncs[2].formula()) == "a notin b and a = b");
  // bound names are renamed apart across conjuncts and from free variables
  ncs = normalized_conjunctions(P("(forall x in y . x in z) and (forall x in z . x = x) and x = x"));
  REQUIRE(ncs.size() == 1);
  CHECK(!check_normalized(ncs[0].conjuncts));
  CHECK(print_formula(ncs[0].formula()) ==
        "(forall x#1 in y . x#1 in z) and (forall x#2 in z . x#2 = x#2) and x = x");
}

TEST_CASE("normalized_conjunctions: prune hook and early stop") {
  Formula f = P("a in b or c in d");
  NormalizeOptions o;
  o.prune_hook = [](const std::vector<std::int8_t>& v) { return v[0] != 1; };
  auto ncs = normalized_conjunctions(f, o);
  REQUIRE(ncs.size() == 1);
  CHECK(ncs[0].valuation == std::vector<bool>{false, true});
  std::size_t n = for_each_normalized_conjunction(f, [](const NormalizedConjunction&) { return false; });
  CHECK(n == 1);
}

TEST_CASE("normalized_conjunctions: invariants and soundness") {
  gen::Generator g(99);
  gen::Vocabulary v{{"x", "y", "z"}, {"f"}};
  SearchBound b{2, 1, 10'000'000};
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    Formula f = g.full(3, v, 2);
    auto ncs = normalized_conjunctions(f);
    const std::size_t n = skeleton(dualize_existentials(f)).substitution.size();
    CHECK(ncs.size() <= (std::size_t{1} << n));
    bool stream_sat = false;
    for (const auto& nc : ncs) {
      CHECK(!check_normalized(nc.conjuncts));
      auto model = solve_conjunction(nc.conjuncts, b);
      if (model) CHECK(extended_evaluate(*model, f));
      stream_sat = stream_sat || model.has_value();
    }
    bool f_sat = !oracle_enumerate(f, b).empty();
    CHECK_MESSAGE(stream_sat == f_sat, print_formula(f));
    ++checked;
  }
  CHECK(checked == 100);
}
