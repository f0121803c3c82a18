#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pairsat/constructs.hpp"
#include "pairsat/encoders.hpp"
#include "pairsat/error.hpp"
#include "pairsat/evaluator.hpp"
#include "pairsat/normalize.hpp"
#include "pairsat/reduction.hpp"
#include "pairsat/solver.hpp"
#include "pairsat/syntax.hpp"
#include "pairsat/validate.hpp"

namespace py = pybind11;
using namespace pairsat;

namespace {

py::dict model_dict(const Interpretation& i) {
  py::dict sets, maps;
  for (const auto& [v, value] : i.assignment())
    (v.sort == Sort::Set ? sets : maps)[py::str(v.name)] = value.to_string();
  py::dict d;
  d["pairing"] = i.pairing().name();
  d["sets"] = sets;
  d["maps"] = maps;
  d["text"] = print_model(i);
  return d;
}

}  // namespace

PYBIND11_MODULE(_pairsat, m) {
  m.doc() = "Bounded satisfiability for a two-sorted set theory with pairs";

  static py::exception<Error> base_error(m, "PairsatError");
  static py::exception<ParseError> parse_error(m, "ParseError", base_error.ptr());
  static py::exception<ResourceError> resource_error(m, "ResourceError", base_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const ResourceError& e) {
      py::set_error(resource_error, e.what());
    } catch (const Error& e) {
      py::set_error(base_error, e.what());
    }
  });

  m.def("canonical", [](const std::string& text) { return print_formula(parse_formula(text)); },
        "Parse a formula and print it in canonical form.");

  m.def(
      "validate",
      [](const std::string& text, const std::string& language, bool extensions) {
        std::vector<std::string> out;
        for (const auto& d :
             validate(parse_formula(text), {language == "nonpairs" ? Language::Nonpairs : Language::Base, extensions}))
          out.push_back(d.message);
        return out;
      },
      py::arg("formula"), py::arg("language") = "base", py::arg("extensions") = false,
      "Diagnostics for a formula; empty when well-formed.");

  m.def(
      "evaluate",
      [](const std::string& model, const std::string& formula) {
        return extended_evaluate(parse_model(model), parse_formula(formula));
      },
      py::arg("model"), py::arg("formula"), "Truth value of a formula under a model given in model-file text.");

  m.def(
      "normalize",
      [](const std::string& text) {
        std::vector<std::string> out;
        for (const auto& c : normalized_conjunctions(parse_formula(text))) out.push_back(print_formula(c.formula()));
        return out;
      },
      "Normalized conjunctions of a formula.");

  m.def(
      "reduce",
      [](const std::string& text) {
        const Formula f = parse_formula(text);
        const NormalizedConjunction c = as_normalized(f);
        const PsiPrime pp = build_psi_prime(c);
        py::dict d;
        d["tau"] = print_formula(pp.tau);
        d["psi_prime"] = print_formula(pp.formula);
        d["renaming"] = pp.renaming.forward;
        return d;
      },
      "tau and the guarded reduction of a normalized conjunction.");

  m.def(
      "check_sat",
      [](const std::string& text, unsigned level, unsigned breadth, std::uint64_t cap, unsigned jobs) {
        SatResult r;
        {
          py::gil_scoped_release release;
          r = decide_bounded(parse_formula(text), {level, breadth, cap}, {jobs});
        }
        py::dict d;
        d["sat"] = r.sat();
        d["model"] = r.model ? py::object(model_dict(*r.model)) : py::none();
        d["candidate_space"] = r.stats.candidate_space;
        d["conjunctions"] = r.stats.conjunctions;
        d["search_ms"] = r.stats.search_ms;
        return d;
      },
      py::arg("formula"), py::arg("level") = 3, py::arg("breadth") = 4, py::arg("cap") = 10'000'000,
      py::arg("jobs") = 1, "Bounded model search; 'sat' is False when no model exists within the bound.");

  m.def("constructs", [] {
    std::vector<std::string> out;
    for (const auto& info : construct_table()) out.push_back(info.name);
    return out;
  });

  m.def(
      "expand",
      [](const std::string& name, const std::vector<std::string>& args) {
        return print_formula(expand(make_call(name, args)));
      },
      py::arg("name"), py::arg("args"), "Expand a set-theoretic construct.");

  m.def(
      "sweep",
      [](const std::string& name, unsigned level, unsigned breadth) {
        SweepReport r;
        {
          py::gil_scoped_release release;
          r = sweep_construct(name, level, breadth);
        }
        return py::make_tuple(r.agreements, r.interpretations);
      },
      py::arg("name"), py::arg("level") = 3, py::arg("breadth") = 2,
      "(agreements, interpretations) of the expansion against a direct computation.");

  m.def("encode_propositional",
        [](const std::string& text) { return print_formula(encode_propositional(parse_propositional(text))); });

  m.def("encode_domino", [](const std::string& text) {
    return print_formula(encode_domino(parse_domino(text)).formula);
  });

  m.def(
      "check_peano",
      [](const std::string& model, std::size_t cap) {
        return check_peano(peano_candidate_from(parse_model(model)), cap).to_string();
      },
      py::arg("model"), py::arg("cap") = 12, "Peano axiom report for N, Z and @S of a model.");
}
