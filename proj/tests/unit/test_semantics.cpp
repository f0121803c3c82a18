#include <doctest.h>

#include "pairsat/error.hpp"
#include "pairsat/evaluator.hpp"
#include "pairsat/syntax.hpp"
#include "support/generators.hpp"

using namespace pairsat;

namespace {
HFSet E() { return HFSet(); }
HFSet S(HFSet x) { return HFSet::singleton(x); }
Variable SV(const char* n) { return Variable::set(n); }
Variable MV(const char* n) { return Variable::map(n); }
bool eval(const Interpretation& i, const char* text) { return extended_evaluate(i, parse_formula(text)); }
}  // namespace

TEST_CASE("variant") {
  Interpretation i;
  i.assign(SV("x"), E());
  i.assign(SV("y"), E());
  auto j = i.variant({SV("x")}, {{SV("x"), S(E())}});
  CHECK(j.at(SV("x")) == S(E()));
  CHECK(j.at(SV("y")) == E());
  CHECK_THROWS_AS(i.variant({MV("f")}, {{MV("f"), S(E())}}), InvalidInterpretation);
  CHECK(i.variant({}, {}) == i);
  CHECK_THROWS_AS(i.variant({SV("x")}, {{SV("y"), E()}}), InvalidInterpretation);
}

TEST_CASE("evaluate: basic examples") {
  Interpretation i;
  i.assign(SV("x"), E());
  CHECK(eval(i, "forall x' in x . x' != x'"));
  Interpretation j;
  j.assign(MV("f"), S(kur_pair(E(), E())));
  CHECK(eval(j, "forall [a,b] in @f . a = b"));
  Interpretation k;
  k.assign(SV("x"), S(kur_pair(E(), E())));
  CHECK(eval(k, "forall a in nonpairs(x) . a != a"));
  CHECK(!eval(k, "forall a in x . a != a"));
}

TEST_CASE("evaluate: errors") {
  Interpretation i;
  CHECK_THROWS_AS(evaluate(i, parse_formula("x = x")), EvaluationError);
  i.assign(SV("x"), E());
  i.assign(MV("f"), E());
  CHECK_THROWS_AS(evaluate(i, parse_formula("x sub dom(@f)")), ContractError);
}

TEST_CASE("extension atoms") {
  Interpretation i;
  i.assign(SV("x"), S(E()));
  i.assign(MV("f"), S(kur_pair(E(), S(E()))));
  CHECK(eval(i, "x sub dom(@f)"));
  i.assign(SV("x"), S(S(E())));
  CHECK(!eval(i, "x sub dom(@f)"));
  CHECK(eval(i, "x sub ran(@f)"));
  i.assign(SV("a"), S(E()));
  CHECK(eval(i, "x sub img(@f, a)"));
  i.assign(SV("a"), E());
  CHECK(!eval(i, "x sub img(@f, a)"));
  // f = {(0,1)}, g = {(1,0)}: f∘g = {(0,0)}
  i.assign(MV("g"), S(kur_pair(S(E()), E())));
  i.assign(MV("h"), S(kur_pair(E(), E())));
  CHECK(eval(i, "@h sub comp(@f, @g)"));
  CHECK(!eval(i, "@h sub comp(@g, @f)"));
}

TEST_CASE("pair atoms under the delta pairing") {
  auto p = delta_pairing(S(E()));
  Interpretation i(p);
  i.assign(SV("a"), E());
  i.assign(SV("b"), S(E()));
  CHECK_THROWS_AS(i.assign(MV("f"), S(kur_pair(E(), E()))), InvalidInterpretation);
  i.assign(MV("f"), S(p.pair(E(), S(E()))));
  CHECK(eval(i, "[a,b] in @f"));
  CHECK(!eval(i, "[b,a] in @f"));
  CHECK(eval(i, "forall [u,v] in @f . u = a and v = b"));
}

TEST_CASE("duality of existentials") {
  gen::Generator g(11);
  gen::Vocabulary v;
  auto v3 = universe(3);
  std::vector<HFSet> maps{E(), S(kur_pair(E(), E())), HFSet::of({kur_pair(E(), S(E())), kur_pair(S(E()), E())})};
  for (int n = 0; n < 100; ++n) {
    Formula body = g.quantifier_free(2, {"x", "y", "z", "b1"}, {"f"});
    Formula ex = Formula::exists_in(SV("b1"), SV("x"), body);
    Formula fa = Formula::negation(Formula::forall_in(SV("b1"), SV("x"), Formula::negation(body)));
    for (auto x : v3)
      for (auto y : v3)
        for (auto m : maps) {
          Interpretation i;
          i.assign(SV("x"), x);
          i.assign(SV("y"), y);
          i.assign(SV("z"), v3[1]);
          i.assign(MV("f"), m);
          CHECK(evaluate(i, ex) == evaluate(i, fa));
        }
  }
}

TEST_CASE("model files") {
  Interpretation i(delta_pairing(E()));
  i.assign(SV("x"), S(E()));
  i.assign(MV("f"), S(delta_pairing(E()).pair(E(), E())));
  std::string text = print_model(i);
  CHECK(parse_model(text) == i);
  Interpretation k = parse_model("# comment\npairing: kuratowski\nx = {}\n@f = {{{{}}}}\n");
  CHECK(k.at(MV("f")) == S(kur_pair(E(), E())));
  CHECK_THROWS_AS(parse_model("x = {"), ParseError);
  CHECK_THROWS_AS(parse_model("@f = {{}}"), InvalidInterpretation);
}
