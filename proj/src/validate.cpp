#include "pairsat/validate.hpp"

#include <map>
#include <set>

namespace pairsat {

namespace {

class Validator {
 public:
  explicit Validator(const ValidateOptions& o) : opts_(o) {}

  std::vector<Diagnostic> run(const Formula& f) {
    check_sorts(f);
    walk_boolean(f);
    return std::move(out_);
  }

 private:
  void report(Diagnostic::Code code, std::string msg) {
    // One report per distinct message keeps the list readable.
    if (seen_.insert(msg).second) out_.push_back({code, std::move(msg)});
  }

  void collect_vars(const Formula& f, std::map<std::string, std::set<Sort>>& sorts) {
    for (const auto& v : f.vars()) sorts[v.name].insert(v.sort);
    for (const auto& c : f.children()) collect_vars(c, sorts);
  }

  void check_sorts(const Formula& f) {
    std::map<std::string, std::set<Sort>> sorts;
    collect_vars(f, sorts);
    for (const auto& [name, s] : sorts)
      if (s.size() > 1)
        report(Diagnostic::Code::SortConflict,
               "name '" + name + "' is used both as a set variable and as a map variable");
  }

  void walk_boolean(const Formula& f) {
    const Kind k = f.kind();
    if (is_atom(k)) {
      check_atom(f);
    } else if (is_connective(k)) {
      for (const auto& c : f.children()) walk_boolean(c);
    } else {
      check_prenex(f);
    }
  }

  void check_prenex(const Formula& f) {
    const bool universal = is_universal(f.kind());
    std::vector<Formula> prefix;
    Formula cur = f;
    while (is_quantifier(cur.kind())) {
      prefix.push_back(cur);
      cur = cur.child(0);
    }
    std::set<Variable> bound;
    for (const auto& q : prefix) {
      check_quantifier(q);
      if (is_universal(q.kind()) != universal)
        report(Diagnostic::Code::MixedPrefix,
               "quantifier prefix mixes universal and existential quantifiers");
      for (const auto& b : q.bound_vars())
        if (!bound.insert(b).second)
          report(Diagnostic::Code::DuplicateBinder,
                 "variable '" + b.name + "' is bound twice in one quantifier prefix");
    }
    for (const auto& q : prefix) {
      const Variable& d = q.domain_var();
      if (bound.count(d))
        report(Diagnostic::Code::NonSimplePrefix,
               "non-simple prenex: quantified variable '" + d.name +
                   "' also occurs as a domain variable");
    }
    check_matrix(cur);
  }

  void check_matrix(const Formula& f) {
    if (is_quantifier(f.kind())) {
      report(Diagnostic::Code::NestedQuantifier,
             "quantifier occurs inside the quantifier-free matrix of a prenex formula");
      check_quantifier(f);
      check_matrix(f.child(0));
      return;
    }
    if (is_atom(f.kind())) {
      check_atom(f);
      return;
    }
    for (const auto& c : f.children()) check_matrix(c);
  }

  void check_quantifier(const Formula& q) {
    const Kind k = q.kind();
    const Variable& d = q.domain_var();
    if (opts_.language == Language::Base) {
      if (k == Kind::ForallInNonpairs)
        report(Diagnostic::Code::WrongFragment,
               "nonpairs(...) quantifiers are only available in the nonpairs fragment");
      if ((k == Kind::ForallPairIn || k == Kind::ExistsPairIn) && d.sort != Sort::Map)
        report(Diagnostic::Code::SortViolation,
               "pair quantifier over set variable '" + d.name + "' requires a map variable");
    } else {
      if (k == Kind::ForallIn || k == Kind::ExistsIn)
        report(Diagnostic::Code::WrongFragment,
               "plain 'x in y' quantifiers are not part of the nonpairs fragment; use nonpairs(y)");
      if (is_existential(k))
        report(Diagnostic::Code::WrongFragment,
               "existential quantifiers are not part of the nonpairs fragment");
      check_nonpairs_vars(q);
    }
  }

  void check_atom(const Formula& a) {
    const Kind k = a.kind();
    if (is_extension_atom(k) && !opts_.extensions)
      report(Diagnostic::Code::ExtensionDisabled,
             "extension literal (sub dom/ran/img/comp) used without the extension flag");
    if (opts_.language == Language::Base) {
      if (k == Kind::MemberNonpairs)
        report(Diagnostic::Code::WrongFragment,
               "nonpairs(...) terms are only available in the nonpairs fragment");
      if (k == Kind::PairMember && a.vars()[2].sort != Sort::Map)
        report(Diagnostic::Code::SortViolation,
               "pair atom over set variable '" + a.vars()[2].name + "' requires a map variable");
    } else {
      if (k == Kind::MemberSet)
        report(Diagnostic::Code::WrongFragment,
               "plain membership 'x in y' is not part of the nonpairs fragment");
      if (is_extension_atom(k))
        report(Diagnostic::Code::WrongFragment,
               "extension literals are not part of the nonpairs fragment");
      check_nonpairs_vars(a);
    }
  }

  void check_nonpairs_vars(const Formula& node) {
    for (const auto& v : node.vars())
      if (v.sort == Sort::Map)
        report(Diagnostic::Code::SortViolation,
               "nonpairs-fragment formulas involve only set variables, found @" + v.name);
  }

  ValidateOptions opts_;
  std::vector<Diagnostic> out_;
  std::set<std::string> seen_;
};

}  // namespace

std::vector<Diagnostic> validate(const Formula& f, const ValidateOptions& options) {
  return Validator(options).run(f);
}

PrenexView prenex_view(const Formula& f) {
  PrenexView view{{}, f};
  while (is_quantifier(view.matrix.kind())) {
    view.prefix.push_back(view.matrix);
    view.matrix = view.matrix.child(0);
  }
  return view;
}

}  // namespace pairsat
