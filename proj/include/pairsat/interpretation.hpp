#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "pairsat/formula.hpp"
#include "pairsat/hfset.hpp"
#include "pairsat/pairing.hpp"

namespace pairsat {

/// A pair-aware interpretation: an assignment of HF sets to variables plus
/// the pairing function used for `[x,y]`. Map variables may only hold sets
/// of pairs (under that pairing).
class Interpretation {
 public:
  explicit Interpretation(PairingSpec pairing = PairingSpec::kuratowski()) : pairing_(pairing) {}

  const PairingSpec& pairing() const { return pairing_; }
  const std::map<Variable, HFSet>& assignment() const { return assignment_; }

  /// Throws InvalidInterpretation if a map value contains a non-pair.
  void assign(const Variable& v, HFSet value);
  std::optional<HFSet> value(const Variable& v) const;
  /// Throws EvaluationError when unassigned.
  HFSet at(const Variable& v) const;
  bool has(const Variable& v) const { return assignment_.count(v) > 0; }

  /// W-variant: agrees with *this outside `w`, same pairing. Updates must
  /// touch only variables in `w`.
  Interpretation variant(const std::set<Variable>& w, const std::map<Variable, HFSet>& updates) const;

  /// Drops every variable not in `keep`.
  Interpretation restricted_to(const std::set<Variable>& keep) const;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;

 private:
  PairingSpec pairing_;
  std::map<Variable, HFSet> assignment_;
};

/// Model file text:
///
///   pairing: kuratowski          (or: pairing: delta {...})
///   x = {{}}
///   @f = {{{}}}
///
/// Lines starting with `#` are comments.
std::string print_model(const Interpretation& i);
Interpretation parse_model(std::string_view text);

}  // namespace pairsat
