#include <doctest.h>

#include <random>

#include "pairsat/constructs.hpp"
#include "pairsat/error.hpp"
#include "pairsat/evaluator.hpp"
#include "pairsat/solver.hpp"
#include "pairsat/syntax.hpp"
#include "pairsat/validate.hpp"

using namespace pairsat;

namespace {
HFSet E() { return HFSet(); }
HFSet S(HFSet x) { return HFSet::singleton(x); }
std::string X(const std::string& name, const std::vector<std::string>& args) {
  return print_formula(expand(make_call(name, args)));
}
}  // namespace

TEST_CASE("table shape") {
  CHECK(construct_table().size() == 29);
  CHECK(construct_info("cartesian").sorts == std::vector<Sort>{Sort::Map, Sort::Set, Sort::Set});
  CHECK_THROWS_AS(construct_info("closure"), ContractError);
  CHECK_THROWS_AS(make_call("union", {"x", "y"}), ContractError);
  CHECK_THROWS_AS(make_call("union", {"x", "@y", "z"}), ContractError);
  CHECK(make_call("inverse", {"@f", "g"}).args[1] == Variable::map("g"));
  CHECK_THROWS_AS(expand(ConstructCall{"inverse", {Variable::set("f"), Variable::map("g")}}), ContractError);
}

TEST_CASE("expand examples") {
  CHECK(X("empty_set", {"x"}) == "forall x' in x . x' != x'");
  CHECK(X("union", {"x", "y", "z"}) ==
        "(forall x' in y . x' in x) and (forall x' in z . x' in x) and forall x' in x . x' in y or x' in z");
  CHECK(X("single_valued", {"f"}) == "forall [x,y] in @f . forall [x',y'] in @f . x = x' -> y = y'");
  CHECK(X("inverse", {"f", "g"}) == "(forall [x,y] in @f . [y,x] in @g) and forall [x,y] in @g . [y,x] in @f");
}

TEST_CASE("bound variables never capture arguments") {
  CHECK(X("empty_set", {"x'"}) == "forall x'' in x' . x'' != x''");
  CHECK(X("subseteq", {"x'", "x''"}) == "forall x''' in x' . x''' in x''");
  CHECK(X("single_valued", {"x"}) == "forall [x'',y] in @x . forall [x',y'] in @x . x'' = x' -> y = y'");
  CHECK(X("map_singleton", {"f", "x'", "y"}) == "[x',y] in @f and forall [x'',y'] in @f . x'' = x' and y' = y");
  for (const auto& info : construct_table()) {
    std::vector<std::string> args;
    for (std::size_t k = 0; k < info.sorts.size(); ++k) args.push_back(k % 2 ? "x'" : "y'");
    for (std::size_t k = 0; k < info.sorts.size(); ++k) args[k] += std::string(k, '\'');
    const Formula f = expand(make_call(info.name, args));
    const FreeVars fv = free_vars(f);
    std::set<std::string> got = fv.set_vars;
    got.insert(fv.map_vars.begin(), fv.map_vars.end());
    std::set<std::string> want(args.begin(), args.end());
    CHECK_MESSAGE(std::includes(want.begin(), want.end(), got.begin(), got.end()), info.name);
    CHECK_MESSAGE(is_valid(f, {Language::Base, false}), info.name);
    CHECK_FALSE(contains_extension_atom(f));
  }
}

TEST_CASE("oracle examples") {
  Interpretation i;
  i.assign(Variable::set("x"), HFSet::of({E(), S(E())}));
  i.assign(Variable::set("y"), S(E()));
  i.assign(Variable::set("z"), S(S(E())));
  CHECK(oracle_check(make_call("union", {"x", "y", "z"}), i));
  CHECK_FALSE(oracle_check(make_call("union", {"y", "x", "z"}), i));
  i.assign(Variable::map("f"), S(kur_pair(E(), S(E()))));
  i.assign(Variable::map("g"), S(kur_pair(S(E()), E())));
  CHECK(oracle_check(make_call("inverse", {"f", "g"}), i));
  CHECK_FALSE(oracle_check(make_call("map_subseteq", {"f", "g"}), i));
  CHECK(oracle_check(make_call("cartesian", {"f", "y", "z"}), i));
  // pairing of the interpretation is used for map values
  Interpretation d(delta_pairing(S(E())));
  const PairingSpec p = d.pairing();
  d.assign(Variable::map("f"), HFSet::of({p.pair(E(), E())}));
  d.assign(Variable::set("x"), S(E()));
  CHECK(oracle_check(make_call("identity_on", {"f", "x"}), d));
  CHECK(evaluate(d, expand(make_call("identity_on", {"f", "x"}))));
}

TEST_CASE("oracle matches expansion on random interpretations with wide values") {
  std::mt19937 rng(7);
  const auto v4 = universe(4);
  const PairingSpec kur = PairingSpec::kuratowski();
  auto pick = [&] { return v4[rng() % v4.size()]; };
  for (const auto& info : construct_table()) {
    for (int t = 0; t < 200; ++t) {
      Interpretation i;
      std::vector<std::string> args;
      for (std::size_t k = 0; k < info.sorts.size(); ++k) {
        const std::string n = "a" + std::to_string(k);
        args.push_back(n);
        if (info.sorts[k] == Sort::Set) {
          i.assign(Variable::set(n), pick());
        } else {
          std::vector<HFSet> pairs;
          for (int j = rng() % 5; j > 0; --j) pairs.push_back(kur.pair(pick(), pick()));
          i.assign(Variable::map(n), HFSet::of(pairs));
        }
      }
      auto c = make_call(info.name, args);
      REQUIRE_MESSAGE(evaluate(i, expand(c)) == oracle_check(c, i), info.name, " ", print_model(i));
    }
  }
}

TEST_CASE("sweep over V3") {
  for (const auto& info : construct_table()) {
    int maps = 0;
    for (auto s : info.sorts) maps += s == Sort::Map;
    const SweepReport r = sweep_construct(info.name, 3, maps >= 3 ? 2 : 3);
    CHECK_MESSAGE(r.ok(), info.name, " mismatch at ", print_model(*r.first_mismatch));
    CHECK(r.interpretations > 0);
  }
  CHECK(sweep_construct("empty_set").interpretations == 4);
  CHECK(sweep_construct("map_subseteq", 3, 3).interpretations == 697u * 697u);
}

TEST_CASE("dom rewrites") {
  const Variable x = Variable::set("x"), f = Variable::map("f");
  auto range = rewrite_dom_literal(DomRewrite::Range, x, f);
  CHECK(print_formula(range.formula) ==
        "x sub ran(@inv$f) and (forall [x,y] in @inv$f . [y,x] in @f) and forall [x,y] in @f . [y,x] in @inv$f");
  CHECK(range.auxiliaries == std::vector<Variable>{Variable::map("inv$f")});
  auto comp = rewrite_dom_literal(DomRewrite::Composition, x, f);
  CHECK(comp.auxiliaries.size() == 2);
  auto img = rewrite_dom_literal(DomRewrite::Image, x, f);
  CHECK(img.auxiliaries[1] == Variable::set("R$f"));
  CHECK(print_formula(rewrite_dom_literal(DomRewrite::Range, Variable::set("inv$f"), f).formula).find("inv$f$1") !=
        std::string::npos);
  CHECK_THROWS_AS(rewrite_dom_literal(DomRewrite::Range, f, x), ContractError);

  const SweepReport r = sweep_dom_rewrite(DomRewrite::Range, 3, 2);
  CHECK(r.ok());
  CHECK(r.interpretations == 4u * 137u);
  CHECK(sweep_dom_rewrite(DomRewrite::Composition, 3, 2).ok());
  CHECK_THROWS_AS(sweep_dom_rewrite(DomRewrite::Image), ContractError);

  // image witness: R$f = range(f)
  Interpretation i;
  i.assign(x, HFSet::of({E(), S(E())}));
  i.assign(f, HFSet::of({kur_pair(E(), S(S(E()))), kur_pair(S(E()), E())}));
  CHECK(extended_evaluate(i, Formula::sub_dom(x, f)));
  auto w = dom_rewrite_witness(DomRewrite::Image, i, x, f);
  CHECK(w.at(Variable::set("R$f")) == HFSet::of({E(), S(S(E()))}));
  CHECK(extended_evaluate(w, img.formula));
}
