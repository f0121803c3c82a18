#include <doctest.h>

#include "pairsat/error.hpp"
#include "pairsat/evaluator.hpp"
#include "pairsat/solver.hpp"
#include "pairsat/syntax.hpp"
#include "support/generators.hpp"

using namespace pairsat;

namespace {
Formula P(const char* s) { return parse_formula(s); }
HFSet E() { return HFSet(); }
HFSet S(HFSet x) { return HFSet::singleton(x); }
}  // namespace

TEST_CASE("decide_bounded: examples") {
  auto r = decide_bounded(P("x in y"), {2, 4, 10'000'000});
  REQUIRE(r.sat());
  CHECK(r.model->at(Variable::set("x")) == E());
  CHECK(r.model->at(Variable::set("y")) == S(E()));
  for (unsigned level = 1; level <= 4; ++level)
    CHECK(!decide_bounded(P("x in y and y in x"), {level, 2, 10'000'000}).sat());
  r = decide_bounded(P("forall x' in x . x' != x'"));
  REQUIRE(r.sat());
  CHECK(r.model->at(Variable::set("x")) == E());
}

TEST_CASE("oracle_enumerate: examples") {
  CHECK(oracle_enumerate(P("x = x"), {2, 1, 1000}).size() == 2);
  CHECK(oracle_enumerate(P("x != x"), {2, 1, 1000}).empty());
  auto ms = oracle_enumerate(P("x in y"), {2, 1, 1000});
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].at(Variable::set("y")) == S(E()));
  CHECK_THROWS_AS(oracle_enumerate(P("a = b and c = d"), {4, 1, 100}), ResourceError);
}

TEST_CASE("map candidates") {
  CHECK(map_candidate_count(2, 1) == 5);
  CHECK(map_candidate_count(3, 3) == 1 + 16 + 120 + 560);
  const auto& c = map_candidates(3, 2);
  CHECK(c.size() == map_candidate_count(3, 2));
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i - 1] < c[i]);
  for (auto m : c)
    for (auto w : m.members()) CHECK(w.kuratowski_parts());
}

TEST_CASE("resource cap") {
  CHECK_THROWS_AS(decide_bounded(P("@f = @g and @h = @h and @k = @k"), {3, 4, 1000}), ResourceError);
  CHECK_THROWS_AS(decide_bounded(P("x = x"), {5, 1, 1000}), ResourceError);
}

TEST_CASE("maps and pairs") {
  auto r = decide_bounded(P("[a,b] in @f and a != b and (forall [x,y] in @f . x in y)"), {3, 2, 10'000'000});
  REQUIRE(r.sat());
  CHECK(extended_evaluate(*r.model, P("[a,b] in @f and a in b")));
}

TEST_CASE("agreement with the oracle, determinism, monotonicity, jobs") {
  gen::Generator g(1234);
  gen::Vocabulary v{{"x", "y"}, {"f"}};
  SearchBound small{2, 1, 50'000'000}, big{3, 1, 50'000'000};
  for (int i = 0; i < 150; ++i) {
    Formula f = g.full(3, v, 2);
    auto r = decide_bounded(f, small);
    bool oracle = !oracle_enumerate(f, small).empty();
    CHECK_MESSAGE(r.sat() == oracle, print_formula(f));
    if (r.sat()) {
      CHECK(evaluate(*r.model, f));
      auto again = decide_bounded(f, small);
      CHECK(again.model == r.model);
      CHECK(decide_bounded(f, big).sat());
      auto par = decide_bounded(f, small, SolveOptions{3});
      CHECK(par.model == r.model);
    }
  }
}

TEST_CASE("nonpairs-fragment input") {
  auto r = decide_bounded(P("a in nonpairs(b) and (forall x in nonpairs(b) . x = a)"), {3, 1, 1000000});
  REQUIRE(r.sat());
  CHECK(extended_evaluate(*r.model, P("a in b")));
  CHECK(!decide_bounded(P("a in nonpairs(b) and (forall [x,y] in b . x != x) and b = c and [a,a] in c"),
                        {3, 1, 1000000}).sat());
}
