#include "pairsat/syntax.hpp"

namespace pairsat {

namespace {

// Binding strength; quantifiers are open to the right and bind weakest.
int precedence(Kind k) {
  switch (k) {
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    default:
      return is_quantifier(k) ? 0 : 5;
  }
}

std::string atom_text(const Formula& f, bool negated) {
  const auto& v = f.vars();
  const std::string in = negated ? " notin " : " in ";
  const std::string eq = negated ? " != " : " = ";
  switch (f.kind()) {
    case Kind::MemberSet: return v[0].name + in + v[1].name;
    case Kind::EqualSet: return v[0].name + eq + v[1].name;
    case Kind::PairMember: return "[" + v[0].name + "," + v[1].name + "]" + in + v[2].display();
    case Kind::EqualMap: return v[0].display() + eq + v[1].display();
    case Kind::MemberNonpairs: return v[0].name + in + "nonpairs(" + v[1].name + ")";
    case Kind::SubDom: return v[0].name + " sub dom(" + v[1].display() + ")";
    case Kind::SubRange: return v[0].name + " sub ran(" + v[1].display() + ")";
    case Kind::SubImage:
      return v[0].name + " sub img(" + v[1].display() + ", " + v[2].name + ")";
    case Kind::SubComp:
      return v[0].display() + " sub comp(" + v[1].display() + ", " + v[2].display() + ")";
    default: return "?";
  }
}

bool has_negated_sugar(Kind k) {
  return k == Kind::MemberSet || k == Kind::EqualSet || k == Kind::PairMember ||
         k == Kind::EqualMap || k == Kind::MemberNonpairs;
}

std::string binder_text(const Formula& f) {
  const auto& v = f.vars();
  switch (f.kind()) {
    case Kind::ForallIn: return "forall " + v[0].name + " in " + v[1].name;
    case Kind::ExistsIn: return "exists " + v[0].name + " in " + v[1].name;
    case Kind::ForallInNonpairs: return "forall " + v[0].name + " in nonpairs(" + v[1].name + ")";
    case Kind::ForallPairIn:
      return "forall [" + v[0].name + "," + v[1].name + "] in " + v[2].display();
    case Kind::ExistsPairIn:
      return "exists [" + v[0].name + "," + v[1].name + "] in " + v[2].display();
    default: return "?";
  }
}

const char* op_text(Kind k) {
  switch (k) {
    case Kind::And: return " and ";
    case Kind::Or: return " or ";
    case Kind::Implies: return " -> ";
    case Kind::Iff: return " <-> ";
    default: return " ? ";
  }
}

// `ctx` is the minimum precedence the surrounding position accepts;
// `rightmost` says nothing follows this subformula inside its group.
void print(const Formula& f, int ctx, bool rightmost, std::string& out) {
  const Kind k = f.kind();
  if (is_atom(k)) {
    out += atom_text(f, false);
    return;
  }
  if (k == Kind::Not) {
    const Formula& c = f.child(0);
    if (has_negated_sugar(c.kind())) {
      out += atom_text(c, true);
      return;
    }
    out += "not ";
    print(c, 5, rightmost, out);
    return;
  }
  if (is_quantifier(k)) {
    const bool parens = !rightmost;
    if (parens) out += '(';
    out += binder_text(f);
    out += " . ";
    print(f.child(0), 0, true, out);
    if (parens) out += ')';
    return;
  }
  const int p = precedence(k);
  const bool parens = p < ctx;
  if (parens) {
    out += '(';
    rightmost = true;
  }
  const bool right_assoc = k == Kind::Implies;
  print(f.child(0), right_assoc ? p + 1 : p, false, out);
  out += op_text(k);
  print(f.child(1), right_assoc ? p : p + 1, rightmost, out);
  if (parens) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, 0, true, out);
  return out;
}

}  // namespace pairsat
