#include <doctest.h>

#include "pairsat/error.hpp"
#include "pairsat/syntax.hpp"
#include "pairsat/validate.hpp"
#include "support/generators.hpp"

using namespace pairsat;

namespace {
Variable S(const char* n) { return Variable::set(n); }
Variable M(const char* n) { return Variable::map(n); }

bool has_code(const std::vector<Diagnostic>& ds, Diagnostic::Code c) {
  for (const auto& d : ds)
    if (d.code == c) return true;
  return false;
}
}  // namespace

TEST_CASE("parse: emptiness row") {
  Formula f = parse_formula("forall x' in x . not (x' = x')");
  CHECK(f == Formula::forall_in(S("x'"), S("x"), Formula::negation(Formula::equal(S("x'"), S("x'")))));
}

TEST_CASE("parse: pair implication") {
  Formula f = parse_formula("[x,y] in @f -> x in y");
  CHECK(f == Formula::implies(Formula::pair_member(S("x"), S("y"), M("f")), Formula::member(S("x"), S("y"))));
}

TEST_CASE("parse: sort errors") {
  CHECK_THROWS_AS(parse_formula("x in @f"), SortError);
  CHECK_THROWS_AS(parse_formula("@f in x"), SortError);
  CHECK_THROWS_AS(parse_formula("x sub dom(y)"), SortError);
}

TEST_CASE("parse: syntax errors carry positions") {
  try {
    parse_formula("x in y and\n  (z = ");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_formula("x in y y"), ParseError);
  CHECK_THROWS_AS(parse_formula("forall x in y x = x"), ParseError);
  CHECK_THROWS_AS(parse_formula("x # y"), ParseError);
}

TEST_CASE("parse: sugar and precedence") {
  CHECK(parse_formula("x != y") == Formula::negation(Formula::equal(S("x"), S("y"))));
  CHECK(parse_formula("x notin y") == Formula::negation(Formula::member(S("x"), S("y"))));
  Formula a = parse_formula("a = a"), b = parse_formula("b = b"), c = parse_formula("c = c");
  CHECK(parse_formula("a = a -> b = b -> c = c") == Formula::implies(a, Formula::implies(b, c)));
  CHECK(parse_formula("a = a or b = b and c = c") == Formula::disj(a, Formula::conj(b, c)));
  CHECK(parse_formula("not a = a and b = b") == Formula::conj(Formula::negation(a), b));
  CHECK(parse_formula("a = a <-> b = b -> c = c") == Formula::iff(a, Formula::implies(b, c)));
  // quantifier bodies extend to the right
  CHECK(parse_formula("forall x in y . a = a and b = b") ==
        Formula::forall_in(S("x"), S("y"), Formula::conj(a, b)));
}

TEST_CASE("parse: extension and nonpairs forms") {
  CHECK(parse_formula("x sub dom(@f)") == Formula::sub_dom(S("x"), M("f")));
  CHECK(parse_formula("y sub img(@f, x)") == Formula::sub_image(S("y"), M("f"), S("x")));
  CHECK(parse_formula("@h sub comp(@f, @g)") == Formula::sub_comp(M("h"), M("f"), M("g")));
  CHECK(parse_formula("forall a in nonpairs(x) . a in nonpairs(b)") ==
        Formula::forall_in_nonpairs(S("a"), S("x"), Formula::member_nonpairs(S("a"), S("b"))));
  CHECK(parse_formula("[a,b] in p$f") == Formula::pair_member(S("a"), S("b"), S("p$f")));
}

TEST_CASE("print") {
  CHECK(print_formula(Formula::forall_in(S("x"), S("y"), Formula::equal(S("x"), S("x")))) ==
        "forall x in y . x = x");
  CHECK(print_formula(parse_formula("(a = a -> b = b) -> c = c")) == "(a = a -> b = b) -> c = c");
  CHECK(print_formula(parse_formula("((a = a) and (b = b))")) == "a = a and b = b");
  CHECK(print_formula(parse_formula("(forall x in y . x = x) and z = z")) ==
        "(forall x in y . x = x) and z = z");
}

TEST_CASE("print/parse round trip on random formulas") {
  gen::Generator g(7);
  gen::Vocabulary v{{"x", "y", "z", "x'"}, {"f", "g"}};
  for (int i = 0; i < 1000; ++i) {
    Formula f = g.any(g.uniform(0, 5), v);
    std::string text = print_formula(f);
    Formula back = parse_formula(text);
    CHECK_MESSAGE(back == f, text);
    CHECK(print_formula(back) == text);
  }
}

TEST_CASE("validate") {
  auto d = validate(parse_formula("forall x in y . forall z in x . z = z"));
  CHECK(has_code(d, Diagnostic::Code::NonSimplePrefix));
  CHECK(validate(parse_formula("forall [x,y] in @f . x in y")).empty());
  d = validate(parse_formula("x sub dom(@f)"));
  CHECK(has_code(d, Diagnostic::Code::ExtensionDisabled));
  CHECK(validate(parse_formula("x sub dom(@f)"), {Language::Base, true}).empty());
  CHECK(has_code(validate(parse_formula("forall x in y . exists z in w . z = x")),
                 Diagnostic::Code::MixedPrefix));
  CHECK(has_code(validate(parse_formula("forall x in y . (x = x and forall z in w . z = z)")),
                 Diagnostic::Code::NestedQuantifier));
  CHECK(has_code(validate(parse_formula("x in y and [x,y] in @x")), Diagnostic::Code::SortConflict));
  ValidateOptions np{Language::Nonpairs, false};
  CHECK(validate(parse_formula("forall a in nonpairs(x) . [a,a] in z"), np).empty());
  CHECK(has_code(validate(parse_formula("a in b"), np), Diagnostic::Code::WrongFragment));
  CHECK(has_code(validate(parse_formula("[a,b] in @f"), np), Diagnostic::Code::SortViolation));
  CHECK(has_code(validate(parse_formula("a in nonpairs(b)")), Diagnostic::Code::WrongFragment));
  CHECK(validate(parse_formula("not (forall x in y . x = z) or exists w in y . w = w")).empty());
}

TEST_CASE("free variables") {
  auto fv = free_vars(parse_formula("forall x in y . x in z"));
  CHECK(fv.set_vars == std::set<std::string>{"y", "z"});
  CHECK(fv.map_vars.empty());
  fv = free_vars(parse_formula("[x,y] in @f"));
  CHECK(fv.set_vars == std::set<std::string>{"x", "y"});
  CHECK(fv.map_vars == std::set<std::string>{"f"});
  gen::Generator g(3);
  gen::Vocabulary v;
  for (int i = 0; i < 200; ++i) {
    Formula f = g.full(3, v);
    if (!is_quantifier(f.kind())) continue;
    for (const auto& b : f.bound_vars()) {
      CHECK((free_vars(f).all().count(b) == 0 || b == f.domain_var()));
    }
  }
}
