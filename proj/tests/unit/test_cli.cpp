#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pairsat/cli.hpp"

using namespace pairsat;

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/pairsat_cli_test_" + name;
  std::ofstream(path) << text;
  return path;
}
}  // namespace

TEST_CASE("cli exit codes") {
  CHECK(run({"parse", "x in y"}).code == kExitOk);
  CHECK(run({"parse", "x in"}).code == kExitUsage);
  CHECK(run({"parse", "x in"}).err.find("1:5") != std::string::npos);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"validate", "x in y"}).code == kExitOk);
  CHECK(run({"validate", "x sub dom(@f)"}).code == kExitUsage);
  CHECK(run({"validate", "--extensions", "x sub dom(@f)"}).code == kExitOk);
  CHECK(run({"validate", "--language", "nonpairs", "[a,b] in @f"}).code == kExitUsage);
  auto sat = run({"check-sat", "x in y"});
  CHECK(sat.code == kExitSat);
  CHECK(sat.out.rfind("sat\n", 0) == 0);
  auto none = run({"check-sat", "x in x"});
  CHECK(none.code == kExitNoModel);
  CHECK(none.out.find("no model within bound") != std::string::npos);
  CHECK(none.out.find("UNSAT") == std::string::npos);
  CHECK(run({"check-sat", "--level", "4", "--breadth", "4", "@f = @g and @h = @k and @a = @b"}).code ==
        kExitResource);
  CHECK(run({"check-sat", "--level", "9", "x = x"}).code == kExitUsage);
  CHECK(run({"eval", "/nonexistent/model", "x = x"}).code == kExitUsage);
}

TEST_CASE("cli inputs") {
  CHECK(run({"parse", "-"}, "forall x in y . x = x").out == "forall x in y . x = x\n");
  const auto path = temp_file("formula", "a in b and b in c");
  CHECK(run({"parse", "--file", path}).out == "a in b and b in c\n");
  CHECK(run({"parse", "-f", "-"}, "a = a").out == "a = a\n");
  CHECK(run({"parse"}).code == kExitUsage);
}

TEST_CASE("cli json round trip into eval") {
  auto r = run({"check-sat", "--json", "[a,b] in @f and a != b and forall [u,v] in @f . u = a"});
  REQUIRE(r.code == kExitSat);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["result"] == "sat");
  CHECK(doc["bound"]["universe_level"] == 3);
  CHECK(doc["stats"].contains("candidate_space"));
  CHECK(doc["timings_ms"].contains("search"));
  CHECK(doc["model"]["maps"].contains("f"));
  const auto path = temp_file("model.json", r.out);
  auto e = run({"eval", path, "[a,b] in @f and a != b and forall [u,v] in @f . u = a"});
  CHECK(e.code == kExitOk);
  CHECK(e.out == "true\n");
  CHECK(run({"eval", path, "a = b"}).out == "false\n");

  auto none = nlohmann::json::parse(run({"check-sat", "--json", "x in x"}).out);
  CHECK(none["result"] == "no_model_within_bound");
  CHECK(none.contains("note"));
}

TEST_CASE("cli eval and peano on model files") {
  const auto model = temp_file("model.txt", "pairing: kuratowski\na = {}\nb = {{{}}}\n@f = {{{{}}}}\n");
  CHECK(run({"eval", model, "forall [x,y] in @f . x = y"}).out == "true\n");
  CHECK(run({"eval", model, "a sub dom(@f)"}).out == "true\n");
  CHECK(run({"eval", model, "b sub dom(@f)"}).out == "false\n");
  CHECK(run({"eval", "-", "a in b"}, "a = {}\nb = {{}}\n").out == "true\n");
  const auto peano = temp_file("peano.txt", "N = {}\nZ = {}\n@S = {}\n");
  CHECK(run({"check-peano", peano}).out.rfind("fails P1", 0) == 0);
}

TEST_CASE("cli reduce, normalize, expand, encoders") {
  auto r = run({"reduce", "(forall x' in x . [x,x] in @f) and (forall [x',y'] in @f . x' = y' and x' in x)"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("tau: (forall x' in nonpairs(x) . [x,x] in p$f) and forall [x',y'] in p$f . x' = y' and x' in "
                   "nonpairs(x)\n") != std::string::npos);
  CHECK(r.out.find("psi': ") != std::string::npos);
  auto n = run({"normalize", "x in y or not x in y"});
  CHECK(n.out == "x in y\nx notin y\n");
  CHECK(run({"expand", "empty_set", "x"}).out == "forall x' in x . x' != x'\n");
  CHECK(run({"expand", "union", "x", "y"}).code == kExitUsage);
  CHECK(run({"expand", "nothing", "x"}).code == kExitUsage);
  auto list = run({"expand", "--list"});
  CHECK(std::count(list.out.begin(), list.out.end(), '\n') == 29);
  auto chk = run({"expand", "inverse", "f", "g", "--check-oracle", "--breadth", "2"});
  CHECK(chk.code == kExitOk);
  CHECK(chk.out.find("18769/18769") != std::string::npos);
  CHECK(run({"encode-prop", "p | ~p"}).out == "x_p in X or x_p notin X\n");
  CHECK(run({"encode-prop", "p &"}).code == kExitUsage);
  const auto dom = temp_file("domino.txt", "types: a\nH a: a\nV a: a\n");
  auto d = run({"encode-domino", dom, "--stats"});
  CHECK(d.code == kExitOk);
  CHECK(d.out.find("sub dom literals 2") != std::string::npos);
  CHECK(run({"encode-domino", temp_file("bad_domino.txt", "types: a\nH a: b\n")}).code == kExitUsage);
}
