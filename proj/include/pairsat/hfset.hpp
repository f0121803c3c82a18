#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pairsat {

namespace detail {
struct Node;
}

/// A hereditarily finite set.
///
/// Values are interned: each extensional value has exactly one node, so
/// equality and hashing are pointer operations. Members are kept in the
/// canonical total order (shorter member lists first, then elementwise).
/// Handles are trivially copyable and safe to share across threads.
class HFSet {
 public:
  /// The empty set.
  HFSet();

  /// Canonical set with the given members (duplicates are dropped).
  static HFSet of(std::vector<HFSet> members);
  static HFSet of(std::initializer_list<HFSet> members) {
    return of(std::vector<HFSet>(members));
  }
  static HFSet singleton(HFSet member) { return of({member}); }

  /// Parses the nested bracket notation, e.g. `{{},{{}}}`.
  static HFSet parse(std::string_view text);

  /// Members in canonical order.
  std::span<const HFSet> members() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool contains(HFSet x) const;

  /// Least k such that the set belongs to V_k; rank(∅) = 1.
  std::uint32_t rank() const;

  /// Interning id; stable for the lifetime of the process.
  std::uint32_t id() const;

  /// Ids of the members, ascending by id (not canonical order).
  std::span<const std::uint32_t> member_ids() const;

  /// Cached Kuratowski decomposition, if this set is {{u},{u,v}}.
  std::optional<std::pair<HFSet, HFSet>> kuratowski_parts() const;

  std::string to_string() const;

  friend bool operator==(HFSet a, HFSet b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(HFSet a, HFSet b);

 private:
  explicit HFSet(const detail::Node* node) : node_(node) {}
  friend struct detail::Node;
  friend class Interner;
  const detail::Node* node_;
};

/// Plain nested collection used as input to canonicalize().
struct RawSet {
  std::vector<RawSet> elements;
};

struct CanonicalizeLimits {
  std::size_t max_depth = 64;
  std::size_t max_nodes = 100000;
};

/// Builds the canonical HFSet of a raw nested collection.
HFSet canonicalize(const RawSet& raw, const CanonicalizeLimits& limits = {});

/// Kuratowski pair {{u},{u,v}}.
HFSet kur_pair(HFSet u, HFSet v);
std::optional<std::pair<HFSet, HFSet>> kur_unpair(HFSet w);

/// Von Neumann level V_level in canonical order. Levels above `cap` are refused.
std::vector<HFSet> universe(unsigned level, unsigned cap = 4);

/// Limit on the number of distinct interned sets (default 10^6).
void set_interning_limit(std::size_t limit);
std::size_t interning_limit();
std::size_t interned_count();

/// Standard set algebra on HF values.
HFSet set_union(HFSet a, HFSet b);
HFSet set_intersection(HFSet a, HFSet b);
HFSet set_difference(HFSet a, HFSet b);
bool is_subset(HFSet a, HFSet b);

/// Recursive extensional equality, independent of interning. Test oracle.
bool extensionally_equal(HFSet a, HFSet b);

}  // namespace pairsat

template <>
struct std::hash<pairsat::HFSet> {
  std::size_t operator()(pairsat::HFSet s) const noexcept {
    return std::hash<std::uint32_t>{}(s.id());
  }
};
