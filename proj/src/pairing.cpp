#include "pairsat/pairing.hpp"

#include <vector>

namespace pairsat {

std::string PairingSpec::name() const {
  if (kind_ == Kind::Kuratowski) return "kuratowski";
  return "delta " + delta_.to_string();
}

HFSet PairingSpec::pair(HFSet u, HFSet v) const {
  HFSet k = kur_pair(u, v);
  if (kind_ == Kind::Kuratowski) return k;
  return HFSet::of({k, HFSet::singleton(delta_)});
}

std::optional<std::pair<HFSet, HFSet>> PairingSpec::unpair(HFSet w) const {
  if (kind_ == Kind::Kuratowski) return w.kuratowski_parts();

  // w = {kur(u,v), {delta}}; the two members coincide when kur(u,v) = {delta}.
  auto members = w.members();
  auto is_tag = [this](HFSet t) { return t.size() == 1 && t.members()[0] == delta_; };
  if (members.size() == 1) {
    if (!is_tag(members[0])) return std::nullopt;
    return members[0].kuratowski_parts();
  }
  if (members.size() != 2) return std::nullopt;
  for (int i = 0; i < 2; ++i) {
    if (is_tag(members[i])) {
      if (auto parts = members[1 - i].kuratowski_parts()) return parts;
    }
  }
  return std::nullopt;
}

HFSet pairs_of(HFSet s, const PairingSpec& p) {
  std::vector<HFSet> out;
  for (auto m : s.members())
    if (p.is_pair(m)) out.push_back(m);
  return HFSet::of(std::move(out));
}

}  // namespace pairsat
