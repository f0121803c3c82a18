#pragma once

#include <optional>
#include <string>
#include <utility>

#include "pairsat/hfset.hpp"

namespace pairsat {

/// An injective pairing function together with its inverse.
///
/// Two pairings are provided: Kuratowski's {{u},{u,v}} and the tagged
/// variant {kur(u,v), {delta}} used to move models onto a pairing whose
/// pairs cannot occur inside a chosen family of sets.
class PairingSpec {
 public:
  enum class Kind { Kuratowski, Delta };

  static PairingSpec kuratowski() { return PairingSpec(Kind::Kuratowski, HFSet()); }
  static PairingSpec delta(HFSet delta) { return PairingSpec(Kind::Delta, delta); }

  Kind kind() const { return kind_; }
  /// Tag set; only meaningful for Kind::Delta.
  HFSet delta_set() const { return delta_; }
  std::string name() const;

  HFSet pair(HFSet u, HFSet v) const;
  /// Defined exactly on the image of pair().
  std::optional<std::pair<HFSet, HFSet>> unpair(HFSet w) const;
  bool is_pair(HFSet w) const { return unpair(w).has_value(); }

  friend bool operator==(const PairingSpec&, const PairingSpec&) = default;

 private:
  PairingSpec(Kind kind, HFSet delta) : kind_(kind), delta_(delta) {}
  Kind kind_;
  HFSet delta_;
};

inline PairingSpec delta_pairing(HFSet delta) { return PairingSpec::delta(delta); }

/// [s] relative to `p`: the members of `s` that are pairs.
HFSet pairs_of(HFSet s, const PairingSpec& p);

}  // namespace pairsat
