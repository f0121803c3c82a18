#include "pairsat/encoders.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "pairsat/constructs.hpp"
#include "pairsat/error.hpp"
#include "pairsat/syntax.hpp"

namespace pairsat {

// ---------------------------------------------------------------------------
// Propositional formulas

namespace {

class PropParser {
 public:
  explicit PropParser(std::string_view s) : src_(s) {}

  PropFormula run() {
    Prop p = iff();
    skip();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return {p, names_};
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (src_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  Prop iff() {
    Prop a = imp();
    while (eat("<->")) a = Prop::make(Prop::Op::Iff, {a, imp()});
    return a;
  }

  Prop imp() {
    Prop a = disj();
    skip();
    if (src_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return Prop::make(Prop::Op::Implies, {a, imp()});
    }
    return a;
  }

  Prop disj() {
    Prop a = conj();
    while (eat("|")) a = Prop::make(Prop::Op::Or, {a, conj()});
    return a;
  }

  Prop conj() {
    Prop a = unary();
    while (eat("&")) a = Prop::make(Prop::Op::And, {a, unary()});
    return a;
  }

  Prop unary() {
    if (eat("~")) return Prop::make(Prop::Op::Not, {unary()});
    if (eat("(")) {
      Prop a = iff();
      if (!eat(")")) fail("expected ')'");
      return a;
    }
    skip();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(src_[start]))) {
      pos_ = start;
      fail(pos_ < src_.size() ? "expected a variable" : "unexpected end of input");
    }
    const std::string name(src_.substr(start, pos_ - start));
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      names_.push_back(name);
      it = names_.end() - 1;
    }
    return Prop::var(static_cast<int>(it - names_.begin()));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
};

int prop_prec(Prop::Op op) {
  switch (op) {
    case Prop::Op::Iff: return 1;
    case Prop::Op::Implies: return 2;
    case Prop::Op::Or: return 3;
    case Prop::Op::And: return 4;
    default: return 5;
  }
}

std::string prop_text(const Prop& p, const std::vector<std::string>& names) {
  auto wrap = [&](const Prop& c, bool paren) {
    const std::string s = prop_text(c, names);
    return paren ? "(" + s + ")" : s;
  };
  const int me = prop_prec(p.op());
  const auto& k = p.children();
  switch (p.op()) {
    case Prop::Op::Var: return names.at(p.index());
    case Prop::Op::Not: return "~" + wrap(k[0], prop_prec(k[0].op()) < 5);
    case Prop::Op::And: return wrap(k[0], prop_prec(k[0].op()) < me) + " & " + wrap(k[1], prop_prec(k[1].op()) <= me);
    case Prop::Op::Or: return wrap(k[0], prop_prec(k[0].op()) < me) + " | " + wrap(k[1], prop_prec(k[1].op()) <= me);
    case Prop::Op::Implies:
      return wrap(k[0], prop_prec(k[0].op()) <= me) + " -> " + wrap(k[1], prop_prec(k[1].op()) < me);
    case Prop::Op::Iff:
      return wrap(k[0], prop_prec(k[0].op()) < me) + " <-> " + wrap(k[1], prop_prec(k[1].op()) <= me);
  }
  return "";
}

Formula encode_prop(const Prop& p, const std::vector<std::string>& names) {
  const auto& k = p.children();
  switch (p.op()) {
    case Prop::Op::Var: return Formula::member(Variable::set("x_" + names.at(p.index())), Variable::set("X"));
    case Prop::Op::Not: return Formula::negation(encode_prop(k[0], names));
    case Prop::Op::And: return Formula::conj(encode_prop(k[0], names), encode_prop(k[1], names));
    case Prop::Op::Or: return Formula::disj(encode_prop(k[0], names), encode_prop(k[1], names));
    case Prop::Op::Implies: return Formula::implies(encode_prop(k[0], names), encode_prop(k[1], names));
    case Prop::Op::Iff: return Formula::iff(encode_prop(k[0], names), encode_prop(k[1], names));
  }
  throw ContractError("bad propositional node");
}

}  // namespace

std::string PropFormula::to_string() const { return prop_text(prop, names); }

PropFormula parse_propositional(std::string_view text) { return PropParser(text).run(); }

bool truth_table_sat(const PropFormula& q) {
  const std::size_t n = q.names.size();
  if (n > 20) throw ResourceError("truth table over more than 20 variables");
  std::vector<bool> val(n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    for (std::size_t k = 0; k < n; ++k) val[k] = (m >> k) & 1;
    if (q.prop.eval(val)) return true;
  }
  return false;
}

Formula encode_propositional(const PropFormula& q) { return encode_prop(q.prop, q.names); }

// ---------------------------------------------------------------------------
// Domino systems

std::size_t DominoSystem::index_of(const std::string& type) const {
  auto it = std::find(types.begin(), types.end(), type);
  if (it == types.end()) throw ContractError("unknown domino type '" + type + "'");
  return static_cast<std::size_t>(it - types.begin());
}

DominoSystem parse_domino(std::string_view text) {
  DominoSystem d;
  std::set<std::string> seen_h, seen_v;
  std::size_t line = 1, col = 1;
  std::string stmt;
  std::size_t stmt_line = 1, stmt_col = 1;
  auto words = [](const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
  };
  auto process = [&] {
    const auto colon = stmt.find(':');
    const auto head = words(stmt.substr(0, colon == std::string::npos ? stmt.size() : colon));
    if (head.empty() && colon == std::string::npos) return;
    if (colon == std::string::npos) throw ParseError("expected ':'", stmt_line, stmt_col);
    const auto body = words(stmt.substr(colon + 1));
    if (head.size() == 1 && head[0] == "types") {
      if (!d.types.empty()) throw ParseError("types given twice", stmt_line, stmt_col);
      for (const auto& t : body) {
        if (std::find(d.types.begin(), d.types.end(), t) != d.types.end())
          throw ParseError("duplicate type '" + t + "'", stmt_line, stmt_col);
        d.types.push_back(t);
      }
      return;
    }
    if (head.size() == 2 && (head[0] == "H" || head[0] == "V")) {
      if (d.types.empty()) throw ParseError("types must come first", stmt_line, stmt_col);
      auto known = [&](const std::string& t) {
        if (std::find(d.types.begin(), d.types.end(), t) == d.types.end())
          throw ParseError("unknown type '" + t + "'", stmt_line, stmt_col);
      };
      known(head[1]);
      for (const auto& t : body) known(t);
      auto& seen = head[0] == "H" ? seen_h : seen_v;
      if (!seen.insert(head[1]).second)
        throw ParseError(head[0] + " given twice for '" + head[1] + "'", stmt_line, stmt_col);
      (head[0] == "H" ? d.H : d.V)[head[1]] = body;
      return;
    }
    throw ParseError("expected 'types:', 'H <type>:' or 'V <type>:'", stmt_line, stmt_col);
  };
  bool comment = false;
  for (char ch : text) {
    if (ch == '\n' || ch == ';') {
      process();
      stmt.clear();
      comment = false;
      if (ch == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      stmt_line = line;
      stmt_col = col;
      continue;
    }
    if (ch == '#') comment = true;
    if (!comment) stmt += ch;
    ++col;
  }
  process();
  if (d.types.empty()) throw ParseError("no domino types", line, col);
  for (const auto& t : d.types) {
    if (!seen_h.count(t)) throw ParseError("missing H entry for '" + t + "'", line, col);
    if (!seen_v.count(t)) throw ParseError("missing V entry for '" + t + "'", line, col);
  }
  return d;
}

namespace {

struct Builder {
  std::vector<Formula> parts;
  std::vector<Definition> defs;

  void add(const Formula& f) {
    for (const auto& c : conjuncts_of(f)) parts.push_back(c);
  }
  void use(const std::string& row, std::vector<Variable> args) { add(expand(ConstructCall{row, std::move(args)})); }
  Formula take() {
    Formula f = conjoin(parts);
    parts.clear();
    return f;
  }

  // Target equal to the union of `ms`; returns the variable holding it.
  Variable union_of(const std::vector<Variable>& ms, const std::string& name) {
    if (ms.empty()) {
      Variable t = Variable::map(name);
      use("map_empty", {t});
      defs.push_back({Definition::Op::MapEmpty, t, {}});
      return t;
    }
    Variable acc = ms[0];
    for (std::size_t k = 1; k < ms.size(); ++k) {
      Variable t = Variable::map(k + 1 == ms.size() ? name : name + "_" + std::to_string(k + 1));
      use("map_union", {t, acc, ms[k]});
      defs.push_back({Definition::Op::MapUnion, t, {acc, ms[k]}});
      acc = t;
    }
    return acc;
  }
};

}  // namespace

DominoEncoding encode_domino(const DominoSystem& d) {
  if (d.types.empty()) throw ContractError("a domino system needs at least one type");
  const std::size_t l = d.types.size();
  struct {
    Variable N = Variable::set("N"), Z = Variable::set("Z"), S = Variable::map("S");
    std::vector<Variable> Q;
    std::vector<Formula> hor, ver;
  } e;
  for (std::size_t i = 0; i < l; ++i) e.Q.push_back(Variable::map("Q" + std::to_string(i + 1)));
  const Variable s_inv = Variable::map("S_inv"), zset = Variable::set("Zset"), m = Variable::set("M");
  const Variable x = Variable::set("x"), y = Variable::set("y");

  Builder b;
  b.add(Formula::member(e.Z, e.N));
  b.use("bijective", {e.S});
  b.use("dom_subseteq", {e.S, e.N});
  b.add(Formula::sub_dom(e.N, e.S));
  b.use("inverse", {s_inv, e.S});
  b.defs.push_back({Definition::Op::Inverse, s_inv, {e.S}});
  b.use("singleton", {zset, e.Z});
  b.defs.push_back({Definition::Op::SetSingleton, zset, {e.Z}});
  b.use("diff", {m, e.N, zset});
  b.defs.push_back({Definition::Op::SetDiff, m, {e.N, zset}});
  b.use("dom_subseteq", {s_inv, m});
  b.add(Formula::sub_dom(m, s_inv));
  b.add(Formula::forall_pair_in(x, y, e.S, Formula::member(x, y)));
  const Formula is_peano = b.take();

  const Variable p = Variable::map("P");
  b.use("cartesian", {p, e.N, e.N});
  b.defs.push_back({Definition::Op::Cartesian, p, {e.N, e.N}});
  const Variable all = b.union_of(e.Q, "U");
  b.use("map_subseteq", {p, all});
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) {
      const Variable meet = Variable::map("I" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      b.use("map_inter", {meet, e.Q[i], e.Q[j]});
      b.defs.push_back({Definition::Op::MapInter, meet, {e.Q[i], e.Q[j]}});
      b.use("map_empty", {meet});
    }
  const Formula partition = b.take();

  auto targets = [&](const std::vector<std::string>& ts) {
    std::vector<Variable> out;
    for (const auto& t : ts) out.push_back(e.Q[d.index_of(t)]);
    return out;
  };
  for (std::size_t i = 0; i < l; ++i) {
    const std::string& t = d.types[i];
    const Variable h = b.union_of(targets(d.H.at(t)), "H" + std::to_string(i + 1));
    b.use("comp_subseteq", {s_inv, e.Q[i], h});
    e.hor.push_back(b.take());
  }
  for (std::size_t i = 0; i < l; ++i) {
    const std::string& t = d.types[i];
    const Variable v = b.union_of(targets(d.V.at(t)), "V" + std::to_string(i + 1));
    b.use("comp_subseteq", {e.Q[i], e.S, v});
    e.ver.push_back(b.take());
  }

  std::vector<Formula> all_parts{is_peano, partition};
  for (const auto& h : e.hor) all_parts.push_back(h);
  for (const auto& v : e.ver) all_parts.push_back(v);
  std::vector<Formula> flat;
  for (const auto& f : all_parts)
    for (const auto& c : conjuncts_of(f)) flat.push_back(c);
  return DominoEncoding{conjoin(flat), is_peano, partition, e.hor, e.ver, e.N, e.Z, e.S, e.Q, std::move(b.defs)};
}

std::size_t count_atoms(const Formula& f, Kind kind) {
  std::size_t n = f.kind() == kind ? 1 : 0;
  for (const auto& c : f.children()) n += count_atoms(c, kind);
  return n;
}

Interpretation complete_definitions(const DominoEncoding& e, const Interpretation& base) {
  Interpretation out = base;
  const PairingSpec& pr = out.pairing();
  auto pairs = [&](const Variable& v) {
    std::set<std::pair<HFSet, HFSet>> s;
    for (auto w : out.at(v).members()) {
      auto parts = pr.unpair(w);
      if (!parts) throw InvalidInterpretation("map value of " + v.display() + " holds a non-pair");
      s.insert(*parts);
    }
    return s;
  };
  auto make = [&](const std::set<std::pair<HFSet, HFSet>>& s) {
    std::vector<HFSet> ws;
    for (const auto& [u, v] : s) ws.push_back(pr.pair(u, v));
    return HFSet::of(ws);
  };
  for (const auto& d : e.definitions) {
    const auto& o = d.operands;
    switch (d.op) {
      case Definition::Op::Inverse: {
        std::set<std::pair<HFSet, HFSet>> s;
        for (const auto& [u, v] : pairs(o[0])) s.insert({v, u});
        out.assign(d.target, make(s));
        break;
      }
      case Definition::Op::SetSingleton: out.assign(d.target, HFSet::singleton(out.at(o[0]))); break;
      case Definition::Op::SetDiff: out.assign(d.target, set_difference(out.at(o[0]), out.at(o[1]))); break;
      case Definition::Op::Cartesian: {
        std::set<std::pair<HFSet, HFSet>> s;
        for (auto u : out.at(o[0]).members())
          for (auto v : out.at(o[1]).members()) s.insert({u, v});
        out.assign(d.target, make(s));
        break;
      }
      case Definition::Op::MapUnion: {
        auto s = pairs(o[0]);
        auto t = pairs(o[1]);
        s.insert(t.begin(), t.end());
        out.assign(d.target, make(s));
        break;
      }
      case Definition::Op::MapInter: {
        auto s = pairs(o[0]);
        auto t = pairs(o[1]);
        std::set<std::pair<HFSet, HFSet>> r;
        for (const auto& q : s)
          if (t.count(q)) r.insert(q);
        out.assign(d.target, make(r));
        break;
      }
      case Definition::Op::MapEmpty: out.assign(d.target, HFSet()); break;
    }
  }
  return out;
}

Interpretation grid_interpretation(const DominoSystem& d, const DominoEncoding& e,
                                   const std::vector<std::vector<std::string>>& tiling) {
  const std::size_t k = tiling.size();
  for (const auto& row : tiling)
    if (row.size() != k) throw ContractError("grid_interpretation expects a square tiling");
  std::vector<HFSet> n;
  HFSet cur;
  for (std::size_t i = 0; i < k; ++i) {
    n.push_back(cur);
    cur = HFSet::singleton(cur);
  }
  const PairingSpec kur = PairingSpec::kuratowski();
  Interpretation i(kur);
  i.assign(e.N, HFSet::of(n));
  i.assign(e.Z, n.empty() ? HFSet() : n[0]);
  std::vector<HFSet> succ;
  for (std::size_t a = 0; a + 1 < k; ++a) succ.push_back(kur.pair(n[a], n[a + 1]));
  i.assign(e.S, HFSet::of(succ));
  std::vector<std::vector<HFSet>> blocks(d.types.size());
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = 0; c < k; ++c) blocks[d.index_of(tiling[a][c])].push_back(kur.pair(n[a], n[c]));
  for (std::size_t q = 0; q < blocks.size(); ++q) i.assign(e.Q[q], HFSet::of(blocks[q]));
  return complete_definitions(e, i);
}

// ---------------------------------------------------------------------------
// Peano systems

std::string PeanoReport::to_string() const {
  if (pass()) return "pass";
  return "fails P" + std::to_string(failed_axiom) + ": " + witness;
}

PeanoReport check_peano(const PeanoCandidate& c, std::size_t cap) {
  const auto members = c.N.members();
  if (members.size() > cap)
    throw ResourceError("check_peano: |N| = " + std::to_string(members.size()) + " exceeds cap " +
                        std::to_string(cap));
  if (!c.N.contains(c.Z)) return {1, "Z = " + c.Z.to_string() + " is not in N"};

  std::map<HFSet, HFSet> succ;
  for (auto w : c.S.members()) {
    auto parts = c.pairing.unpair(w);
    if (!parts) return {2, "S holds the non-pair " + w.to_string()};
    const auto& [u, v] = *parts;
    if (!c.N.contains(u) || !c.N.contains(v))
      return {2, "pair [" + u.to_string() + "," + v.to_string() + "] of S is not in N x N"};
    auto [it, fresh] = succ.emplace(u, v);
    if (!fresh) return {2, "S is not single-valued at " + u.to_string()};
  }
  for (auto n : members)
    if (!succ.count(n)) return {2, "dom(S) misses " + n.to_string()};

  std::map<HFSet, HFSet> pred;
  for (const auto& [u, v] : succ) {
    auto [it, fresh] = pred.emplace(v, u);
    if (!fresh) return {3, "S is not injective: " + it->second.to_string() + " and " + u.to_string() + " map to " +
                               v.to_string()};
  }
  if (pred.count(c.Z)) return {4, "Z is the successor of " + pred.at(c.Z).to_string()};

  const std::size_t k = members.size();
  std::vector<std::size_t> next(k);
  std::size_t zero = 0;
  for (std::size_t a = 0; a < k; ++a) {
    if (members[a] == c.Z) zero = a;
    const HFSet s = succ.at(members[a]);
    for (std::size_t b = 0; b < k; ++b)
      if (members[b] == s) next[a] = b;
  }
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t x = 0; x < full; ++x) {
    if (!((x >> zero) & 1)) continue;
    bool closed = true;
    for (std::size_t a = 0; a < k && closed; ++a)
      if (((x >> a) & 1) && !((x >> next[a]) & 1)) closed = false;
    if (closed) {
      std::vector<HFSet> xs;
      for (std::size_t a = 0; a < k; ++a)
        if ((x >> a) & 1) xs.push_back(members[a]);
      return {5, "X = " + HFSet::of(xs).to_string() + " contains Z, is closed under S and differs from N"};
    }
  }
  return {};
}

PeanoCandidate peano_candidate_from(const Interpretation& i) {
  return {i.at(Variable::set("N")), i.at(Variable::set("Z")), i.at(Variable::map("S")), i.pairing()};
}

}  // namespace pairsat
