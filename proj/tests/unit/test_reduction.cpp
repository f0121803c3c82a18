#include <doctest.h>

#include "pairsat/error.hpp"
#include "pairsat/evaluator.hpp"
#include "pairsat/reduction.hpp"
#include "pairsat/solver.hpp"
#include "pairsat/syntax.hpp"
#include "pairsat/validate.hpp"
#include "support/generators.hpp"

using namespace pairsat;

namespace {
NormalizedConjunction N(const char* s) { return as_normalized(parse_formula(s)); }
HFSet E() { return HFSet(); }
HFSet S(HFSet x) { return HFSet::singleton(x); }
Variable SV(const std::string& n) { return Variable::set(n); }
Variable MV(const std::string& n) { return Variable::map(n); }
const char* kIdentity = "(forall x' in x . [x,x] in @f) and (forall [x',y'] in @f . x' = y' and x' in x)";
}  // namespace

TEST_CASE("tau") {
  auto t = tau(N(kIdentity));
  CHECK(print_formula(t.formula) ==
        "(forall x' in nonpairs(x) . [x,x] in p$f) and forall [x',y'] in p$f . x' = y' and x' in nonpairs(x)");
  CHECK(t.renaming.forward.at("f") == "p$f");
  CHECK(is_valid(t.formula, {Language::Nonpairs, false}));
  CHECK(print_formula(tau(N("a in b")).formula) == "a in nonpairs(b)");
  CHECK(print_formula(tau(N("[a,b] in @f")).formula) == "[a,b] in p$f");
  CHECK(print_formula(tau(N("@f = @g")).formula) == "p$f = p$g");
  // renaming avoids existing names
  CHECK(tau(N("[a,b] in @f and p$f = p$f")).renaming.forward.at("f") == "p$f$1");
}

TEST_CASE("build_psi_prime") {
  auto pp = build_psi_prime(N("a = a"));
  CHECK(print_formula(pp.formula) == "a = a and (forall [x#1,y#1] in a . x#1 != x#1) and a in nonpairs(U$0)");
  pp = build_psi_prime(N(kIdentity));
  CHECK(print_formula(pp.formula) ==
        "(forall x' in nonpairs(x) . [x,x] in p$f) and (forall [x',y'] in p$f . x' = y' and x' in nonpairs(x)) and "
        "(forall [x#1,y#1] in x . x#1 != x#1) and (forall x#2 in nonpairs(p$f) . x#2 != x#2) and x in nonpairs(U$0)");
  CHECK(is_valid(pp.formula, {Language::Nonpairs, false}));
}

TEST_CASE("rebase_pairing") {
  Interpretation i;
  i.assign(MV("f"), S(kur_pair(E(), S(E()))));
  i.assign(MV("g"), E());
  i.assign(SV("x"), S(E()));
  auto p = delta_pairing(E());
  auto j = rebase_pairing(i, p);
  CHECK(j.at(MV("f")) == S(p.pair(E(), S(E()))));
  CHECK(j.at(MV("g")) == E());
  CHECK(j.at(SV("x")) == S(E()));
  CHECK(j.pairing() == p);
}

TEST_CASE("transfer_model_backward") {
  Interpretation i;
  i.assign(SV("a"), E());
  auto j = transfer_model_backward(i, N("a = a"));
  CHECK(j.at(SV("U$0")) == S(E()));

  // x = {0}, f = {(0,0)} is not a model: it would need [x,x] in f.
  Interpretation not_model;
  not_model.assign(SV("x"), S(E()));
  not_model.assign(MV("f"), S(kur_pair(E(), E())));
  auto psi = N(kIdentity);
  CHECK_THROWS_AS(transfer_model_backward(not_model, psi), ContractError);
  Interpretation k;
  k.assign(SV("x"), E());
  k.assign(MV("f"), E());
  auto jj = transfer_model_backward(k, psi);
  CHECK(evaluate(jj, build_psi_prime(psi).formula));
  CHECK(pairs_of(jj.at(SV("x")), jj.pairing()).empty());

  Interpretation bad;
  bad.assign(SV("a"), E());
  bad.assign(SV("b"), E());
  CHECK_THROWS_AS(transfer_model_backward(bad, N("a in b")), ContractError);
}

TEST_CASE("transfer_model_forward") {
  auto psi = N("a in b");
  auto pp = build_psi_prime(psi);
  auto r = decide_bounded(pp.formula, {3, 1, 10'000'000});
  REQUIRE(r.sat());
  auto i = transfer_model_forward(*r.model, psi, pp.renaming);
  CHECK(i.at(SV("b")).contains(i.at(SV("a"))));

  auto psi2 = N("a = b");
  auto pp2 = build_psi_prime(psi2);
  auto r2 = decide_bounded(pp2.formula, {3, 1, 10'000'000});
  REQUIRE(r2.sat());
  auto i2 = transfer_model_forward(*r2.model, psi2, pp2.renaming);
  CHECK(i2.at(SV("a")) == r2.model->at(SV("a")));

  auto psi3 = N(kIdentity);
  auto pp3 = build_psi_prime(psi3);
  auto r3 = decide_bounded(pp3.formula, {4, 1, 10'000'000});
  REQUIRE(r3.sat());
  auto i3 = transfer_model_forward(*r3.model, psi3, pp3.renaming);
  CHECK(evaluate(i3, psi3.formula()));
  // round trip
  auto back = transfer_model_backward(i3, psi3);
  auto again = transfer_model_forward(back, psi3, pp3.renaming);
  CHECK(evaluate(again, psi3.formula()));
}
