#include "pairsat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "pairsat/constructs.hpp"
#include "pairsat/encoders.hpp"
#include "pairsat/error.hpp"
#include "pairsat/evaluator.hpp"
#include "pairsat/normalize.hpp"
#include "pairsat/reduction.hpp"
#include "pairsat/solver.hpp"
#include "pairsat/syntax.hpp"
#include "pairsat/validate.hpp"

namespace pairsat {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

class IoError : public Error {
 public:
  using Error::Error;
};

struct Input {
  std::string formula;
  std::string file;
};

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::ifstream f(path);
  if (!f) throw IoError("cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string formula_text(const Input& src, std::istream& in) {
  if (!src.file.empty()) return read_source(src.file, in);
  if (src.formula == "-") return read_source("-", in);
  if (src.formula.empty()) throw CLI::ValidationError("a formula or --file is required");
  return src.formula;
}

void add_formula_input(CLI::App* app, Input& src) {
  app->add_option("formula", src.formula, "Formula text, or - for standard input");
  app->add_option("-f,--file", src.file, "Read the formula from a file (- for standard input)");
}

json model_json(const Interpretation& i) {
  json sets = json::object(), maps = json::object();
  for (const auto& [v, value] : i.assignment())
    (v.sort == Sort::Set ? sets : maps)[v.name] = value.to_string();
  return {{"pairing", i.pairing().name()}, {"sets", sets}, {"maps", maps}};
}

Interpretation load_model(const std::string& path, std::istream& in) {
  const std::string text = read_source(path, in);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON model: ") + e.what(), 1, 1);
    }
    if (!doc.contains("model_text")) throw ParseError("JSON document has no model_text", 1, 1);
    return parse_model(doc["model_text"].get<std::string>());
  }
  return parse_model(text);
}

json bound_json(const SearchBound& b) {
  return {{"universe_level", b.universe_level}, {"map_breadth", b.map_breadth}, {"candidate_cap", b.candidate_cap}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Satisfiability toolkit for a two-sorted quantified set theory with pairs", "pairsat"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Input src;
  bool as_json = false;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a formula and print it in canonical form");
  add_formula_input(parse_cmd, src);
  parse_cmd->add_flag("--json", as_json, "Machine-readable output");

  std::string language = "base";
  bool extensions = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check sorts, prefix shape and fragment membership");
  add_formula_input(validate_cmd, src);
  validate_cmd->add_option("--language", language, "base or nonpairs")->check(CLI::IsMember({"base", "nonpairs"}));
  validate_cmd->add_flag("--extensions", extensions, "Allow sub dom/ran/img/comp literals");
  validate_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* normalize_cmd = app.add_subcommand("normalize", "Print the normalized conjunctions of a formula");
  add_formula_input(normalize_cmd, src);
  normalize_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* reduce_cmd = app.add_subcommand("reduce", "Print tau and the guarded reduction of each normalized conjunction");
  add_formula_input(reduce_cmd, src);
  reduce_cmd->add_flag("--json", as_json, "Machine-readable output");

  SearchBound bound;
  unsigned jobs = 1;
  auto* sat_cmd = app.add_subcommand("check-sat", "Bounded model search");
  add_formula_input(sat_cmd, src);
  sat_cmd->add_option("--level", bound.universe_level, "Set variables range over V_level")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  sat_cmd->add_option("--breadth", bound.map_breadth, "Maximum number of pairs in a map value")
      ->capture_default_str();
  sat_cmd->add_option("--cap", bound.candidate_cap, "Refuse searches with a larger candidate space")
      ->capture_default_str();
  sat_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  sat_cmd->add_flag("--json", as_json, "Machine-readable output");

  std::string construct;
  std::vector<std::string> construct_args;
  bool check_oracle = false;
  unsigned sweep_level = 3, sweep_breadth = 3;
  auto* expand_cmd = app.add_subcommand("expand", "Expand a set-theoretic construct into a formula");
  expand_cmd->add_option("construct", construct, "Construct name (see --list)");
  expand_cmd->add_option("args", construct_args, "Argument variable names");
  bool list_constructs = false;
  expand_cmd->add_flag("--list", list_constructs, "List the available constructs");
  expand_cmd->add_flag("--check-oracle", check_oracle, "Compare the expansion with a direct computation over V_level");
  expand_cmd->add_option("--level", sweep_level, "Universe level of the sweep")->check(CLI::Range(1, 3));
  expand_cmd->add_option("--breadth", sweep_breadth, "Map breadth of the sweep")->check(CLI::Range(0, 3));

  std::string path;
  bool domino_stats = false;
  auto* domino_cmd = app.add_subcommand("encode-domino", "Encode a domino system as a formula");
  domino_cmd->add_option("file", path, "Domino system file (- for standard input)")->required();
  domino_cmd->add_flag("--stats", domino_stats, "Also print size and literal counts");

  std::string prop;
  bool prop_check = false;
  auto* prop_cmd = app.add_subcommand("encode-prop", "Encode a propositional formula (~ & | -> <->)");
  prop_cmd->add_option("formula", prop, "Propositional formula")->required();
  prop_cmd->add_flag("--check", prop_check, "Also compare truth table and bounded search");

  std::size_t peano_cap = 12;
  auto* peano_cmd = app.add_subcommand("check-peano", "Check the Peano axioms on N, Z and @S of a model");
  peano_cmd->add_option("model", path, "Model file (- for standard input)")->required();
  peano_cmd->add_option("--cap", peano_cap, "Largest |N| accepted")->capture_default_str();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula against a model file");
  eval_cmd->add_option("model", path, "Model file, or a JSON document from check-sat --json")->required();
  add_formula_input(eval_cmd, src);

  std::vector<std::string> argv_store{"pairsat"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*parse_cmd) {
      const Formula f = parse_formula(formula_text(src, in));
      if (as_json) {
        const FreeVars fv = free_vars(f);
        out << json{{"formula", print_formula(f)},
                    {"free_sets", fv.set_vars},
                    {"free_maps", fv.map_vars},
                    {"size", formula_size(f)}}
                   .dump(2)
            << "\n";
      } else {
        out << print_formula(f) << "\n";
      }
      return kExitOk;
    }

    if (*validate_cmd) {
      const Formula f = parse_formula(formula_text(src, in));
      const auto diags =
          validate(f, {language == "nonpairs" ? Language::Nonpairs : Language::Base, extensions});
      if (as_json) {
        json list = json::array();
        for (const auto& d : diags) list.push_back(d.message);
        out << json{{"valid", diags.empty()}, {"diagnostics", list}}.dump(2) << "\n";
      } else if (diags.empty()) {
        out << "valid\n";
      } else {
        for (const auto& d : diags) out << "invalid: " << d.message << "\n";
      }
      return diags.empty() ? kExitOk : kExitUsage;
    }

    if (*normalize_cmd) {
      const Formula f = parse_formula(formula_text(src, in));
      json list = json::array();
      std::size_t n = for_each_normalized_conjunction(f, [&](const NormalizedConjunction& c) {
        if (as_json) {
          json parts = json::array();
          for (const auto& p : c.conjuncts) parts.push_back(print_formula(p));
          list.push_back(parts);
        } else {
          out << print_formula(c.formula()) << "\n";
        }
        return true;
      });
      if (as_json) out << json{{"conjunctions", list}}.dump(2) << "\n";
      if (n == 0 && !as_json) out << "# no satisfiable propositional skeleton valuation\n";
      return kExitOk;
    }

    if (*reduce_cmd) {
      const Formula f = parse_formula(formula_text(src, in));
      std::vector<NormalizedConjunction> cs;
      if (!check_normalized(conjuncts_of(f)) && is_valid(f)) cs.push_back(as_normalized(f));
      else cs = normalized_conjunctions(f);
      json list = json::array();
      for (const auto& c : cs) {
        const PsiPrime pp = build_psi_prime(c);
        json ren = json::object();
        for (const auto& [m, x] : pp.renaming.forward) ren["@" + m] = x;
        if (as_json) {
          list.push_back({{"conjunction", print_formula(c.formula())},
                          {"tau", print_formula(pp.tau)},
                          {"psi_prime", print_formula(pp.formula)},
                          {"renaming", ren},
                          {"universe", pp.renaming.universe}});
        } else {
          out << "conjunction: " << print_formula(c.formula()) << "\n";
          out << "tau: " << print_formula(pp.tau) << "\n";
          out << "psi': " << print_formula(pp.formula) << "\n";
        }
      }
      if (as_json) out << json{{"reductions", list}}.dump(2) << "\n";
      return kExitOk;
    }

    if (*sat_cmd) {
      const auto t0 = Clock::now();
      const Formula f = parse_formula(formula_text(src, in));
      const double parse_ms = ms_since(t0);
      const SatResult r = decide_bounded(f, bound, {jobs});
      const double total_ms = ms_since(t0);
      const std::string note =
          "no model exists within the bound; this is not a proof that the formula has no model";
      if (as_json) {
        json doc{{"result", r.sat() ? "sat" : "no_model_within_bound"}, {"bound", bound_json(bound)}};
        if (r.model) {
          doc["model"] = model_json(*r.model);
          doc["model_text"] = print_model(*r.model);
        } else {
          doc["note"] = note;
        }
        doc["stats"] = {{"conjunctions", r.stats.conjunctions},
                        {"candidate_space", r.stats.candidate_space},
                        {"assignments", r.stats.assignments},
                        {"evaluations", r.stats.evaluations}};
        doc["timings_ms"] = {{"parse", parse_ms},
                             {"normalize", r.stats.normalize_ms},
                             {"search", r.stats.search_ms},
                             {"total", total_ms}};
        out << doc.dump(2) << "\n";
      } else if (r.sat()) {
        out << "sat\n" << print_model(*r.model);
      } else {
        out << "no model within bound (" << bound.to_string() << ")\n";
        out << "note: " << note << "\n";
      }
      return r.sat() ? kExitSat : kExitNoModel;
    }

    if (*expand_cmd) {
      if (list_constructs) {
        for (const auto& info : construct_table()) {
          out << info.name;
          for (std::size_t k = 0; k < info.params.size(); ++k)
            out << " " << (info.sorts[k] == Sort::Map ? "@" : "") << info.params[k];
          out << "    " << info.meaning << "\n";
        }
        return kExitOk;
      }
      if (construct.empty()) throw CLI::ValidationError("a construct name is required");
      const ConstructCall call = make_call(construct, construct_args);
      out << print_formula(expand(call)) << "\n";
      if (check_oracle) {
        const SweepReport r = sweep_construct(construct, sweep_level, sweep_breadth);
        out << "oracle: " << r.agreements << "/" << r.interpretations << " interpretations agree ("
            << r.seconds << " s)\n";
        if (!r.ok()) {
          out << "first mismatch:\n" << print_model(*r.first_mismatch);
          return kExitUsage;
        }
      }
      return kExitOk;
    }

    if (*domino_cmd) {
      const DominoEncoding e = encode_domino(parse_domino(read_source(path, in)));
      out << print_formula(e.formula) << "\n";
      if (domino_stats) {
        out << "# size " << formula_size(e.formula) << ", sub dom literals "
            << count_atoms(e.formula, Kind::SubDom) << ", types " << e.Q.size() << "\n";
      }
      return kExitOk;
    }

    if (*prop_cmd) {
      const PropFormula q = parse_propositional(prop);
      const Formula f = encode_propositional(q);
      out << print_formula(f) << "\n";
      if (prop_check) {
        const bool tt = truth_table_sat(q);
        const bool found = decide_bounded(f).sat();
        out << "# truth table: " << (tt ? "satisfiable" : "unsatisfiable")
            << ", bounded search: " << (found ? "sat" : "no model within bound") << "\n";
      }
      return kExitOk;
    }

    if (*peano_cmd) {
      const PeanoReport r = check_peano(peano_candidate_from(load_model(path, in)), peano_cap);
      out << r.to_string() << "\n";
      return kExitOk;
    }

    if (*eval_cmd) {
      const Interpretation i = load_model(path, in);
      const Formula f = parse_formula(formula_text(src, in));
      out << (extended_evaluate(i, f) ? "true" : "false") << "\n";
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pairsat
