#include "pairsat/interpretation.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "pairsat/error.hpp"

namespace pairsat {

void Interpretation::assign(const Variable& v, HFSet value) {
  if (v.sort == Sort::Map) {
    for (auto m : value.members())
      if (!pairing_.is_pair(m))
        throw InvalidInterpretation("map variable @" + v.name + " assigned a non-pair member " +
                                    m.to_string() + " under pairing " + pairing_.name());
  }
  assignment_[v] = value;
}

std::optional<HFSet> Interpretation::value(const Variable& v) const {
  auto it = assignment_.find(v);
  if (it == assignment_.end()) return std::nullopt;
  return it->second;
}

HFSet Interpretation::at(const Variable& v) const {
  auto it = assignment_.find(v);
  if (it == assignment_.end()) throw EvaluationError("unassigned variable " + v.display());
  return it->second;
}

Interpretation Interpretation::variant(const std::set<Variable>& w,
                                       const std::map<Variable, HFSet>& updates) const {
  Interpretation out = *this;
  for (const auto& [v, value] : updates) {
    if (!w.count(v))
      throw InvalidInterpretation("variant update touches " + v.display() + " outside W");
    out.assign(v, value);
  }
  return out;
}

Interpretation Interpretation::restricted_to(const std::set<Variable>& keep) const {
  Interpretation out(pairing_);
  for (const auto& [v, value] : assignment_)
    if (keep.count(v)) out.assignment_.emplace(v, value);
  return out;
}

std::string print_model(const Interpretation& i) {
  std::string out = "pairing: " + i.pairing().name() + "\n";
  for (Sort sort : {Sort::Set, Sort::Map})
    for (const auto& [v, value] : i.assignment())
      if (v.sort == sort) out += v.display() + " = " + value.to_string() + "\n";
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_name(const std::string& n) {
  if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) return false;
  for (char c : n)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#' ||
          c == '$'))
      return false;
  return true;
}

}  // namespace

Interpretation parse_model(std::string_view text) {
  PairingSpec pairing = PairingSpec::kuratowski();
  std::vector<std::pair<Variable, HFSet>> values;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("pairing:", 0) == 0) {
      std::string spec = trim(std::string_view(line).substr(8));
      if (spec == "kuratowski") {
        pairing = PairingSpec::kuratowski();
      } else if (spec.rfind("delta", 0) == 0) {
        try {
          pairing = PairingSpec::delta(HFSet::parse(trim(std::string_view(spec).substr(5))));
        } catch (const ParseError& e) {
          throw ParseError(std::string("bad delta tag: ") + e.what(), line_no, 1);
        }
      } else {
        throw ParseError("unknown pairing '" + spec + "'", line_no, 1);
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'name = {...}'", line_no, 1);
    std::string lhs = trim(std::string_view(line).substr(0, eq));
    Variable v = Variable::set(lhs);
    if (!lhs.empty() && lhs[0] == '@') v = Variable::map(lhs.substr(1));
    if (!valid_name(v.name)) throw ParseError("bad variable name '" + lhs + "'", line_no, 1);
    try {
      values.emplace_back(v, HFSet::parse(trim(std::string_view(line).substr(eq + 1))));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, eq + 2);
    }
  }
  Interpretation out(pairing);
  for (const auto& [v, value] : values) out.assign(v, value);
  return out;
}

}  // namespace pairsat
