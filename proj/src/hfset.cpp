#include "pairsat/hfset.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "pairsat/error.hpp"

namespace pairsat {

namespace detail {

struct Node {
  std::vector<HFSet> children;     // canonical order
  std::vector<std::uint32_t> ids;  // ascending
  std::uint32_t id = 0;
  std::uint32_t rank = 1;
  const Node* kur_first = nullptr;
  const Node* kur_second = nullptr;

  static HFSet handle(const Node* n) { return HFSet(n); }
};

namespace {

std::strong_ordering compare_nodes(const Node* a, const Node* b) {
  if (a == b) return std::strong_ordering::equal;
  if (a->children.size() != b->children.size())
    return a->children.size() <=> b->children.size();
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    auto c = a->children[i] <=> b->children[i];
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

struct IdVectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t seed = v.size();
    for (auto i : v) seed ^= i + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

}  // namespace
}  // namespace detail

class Interner {
 public:
  static Interner& instance() {
    static Interner interner;
    return interner;
  }

  const detail::Node* empty() const { return empty_; }

  // `canonical` must be deduplicated and in canonical order.
  const detail::Node* intern(std::vector<HFSet> canonical) {
    std::vector<std::uint32_t> ids;
    ids.reserve(canonical.size());
    for (auto c : canonical) ids.push_back(c.id());
    std::sort(ids.begin(), ids.end());

    std::lock_guard lock(mu_);
    if (auto it = table_.find(ids); it != table_.end()) return it->second;
    if (nodes_.size() >= limit_)
      throw ResourceError("HF set interning limit of " + std::to_string(limit_) +
                          " distinct sets exceeded");
    auto& node = nodes_.emplace_back();
    node.id = static_cast<std::uint32_t>(nodes_.size() - 1);
    std::uint32_t rank = 0;
    for (auto c : canonical) rank = std::max(rank, c.rank());
    node.rank = rank + 1;
    node.children = std::move(canonical);
    node.ids = ids;
    decompose(node);
    table_.emplace(std::move(ids), &node);
    return &node;
  }

  void set_limit(std::size_t limit) {
    std::lock_guard lock(mu_);
    limit_ = limit;
  }
  std::size_t limit() {
    std::lock_guard lock(mu_);
    return limit_;
  }
  std::size_t count() {
    std::lock_guard lock(mu_);
    return nodes_.size();
  }

 private:
  Interner() {
    auto& node = nodes_.emplace_back();
    node.id = 0;
    node.rank = 1;
    empty_ = &node;
    table_.emplace(std::vector<std::uint32_t>{}, &node);
  }

  // Kuratowski shape: {{u}} or {{u},{u,v}} with u != v.
  static void decompose(detail::Node& node) {
    const auto& ch = node.children;
    if (ch.size() == 1) {
      const auto& inner = ch[0].node_->children;
      if (inner.size() == 1) {
        node.kur_first = node.kur_second = inner[0].node_;
      }
    } else if (ch.size() == 2) {
      const auto& single = ch[0].node_->children;
      const auto& both = ch[1].node_->children;
      if (single.size() == 1 && both.size() == 2) {
        HFSet u = single[0];
        if (both[0] == u) {
          node.kur_first = u.node_;
          node.kur_second = both[1].node_;
        } else if (both[1] == u) {
          node.kur_first = u.node_;
          node.kur_second = both[0].node_;
        }
      }
    }
  }

  std::mutex mu_;
  std::deque<detail::Node> nodes_;
  std::unordered_map<std::vector<std::uint32_t>, const detail::Node*, detail::IdVectorHash> table_;
  const detail::Node* empty_ = nullptr;
  std::size_t limit_ = 1'000'000;
};

HFSet::HFSet() : node_(Interner::instance().empty()) {}

std::strong_ordering operator<=>(HFSet a, HFSet b) { return detail::compare_nodes(a.node_, b.node_); }

HFSet HFSet::of(std::vector<HFSet> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return HFSet(Interner::instance().intern(std::move(members)));
}

std::span<const HFSet> HFSet::members() const { return node_->children; }
std::size_t HFSet::size() const { return node_->children.size(); }
std::uint32_t HFSet::rank() const { return node_->rank; }
std::uint32_t HFSet::id() const { return node_->id; }
std::span<const std::uint32_t> HFSet::member_ids() const { return node_->ids; }

bool HFSet::contains(HFSet x) const {
  const auto& ids = node_->ids;
  if (ids.size() <= 8) return std::find(ids.begin(), ids.end(), x.id()) != ids.end();
  return std::binary_search(ids.begin(), ids.end(), x.id());
}

std::optional<std::pair<HFSet, HFSet>> HFSet::kuratowski_parts() const {
  if (!node_->kur_first) return std::nullopt;
  return std::pair{HFSet(node_->kur_first), HFSet(node_->kur_second)};
}

std::string HFSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto c : node_->children) {
    if (!first) out += ',';
    first = false;
    out += c.to_string();
  }
  out += '}';
  return out;
}

namespace {

class BracketParser {
 public:
  explicit BracketParser(std::string_view text) : text_(text) {}

  HFSet parse_all() {
    skip();
    HFSet s = parse_set(0);
    skip();
    if (pos_ != text_.size()) fail("trailing characters after set");
    return s;
  }

 private:
  HFSet parse_set(std::size_t depth) {
    if (depth > 256) throw ResourceError("HF set nesting too deep");
    expect('{');
    std::vector<HFSet> members;
    skip();
    if (peek() == '}') {
      ++pos_;
      return HFSet::of(std::move(members));
    }
    for (;;) {
      skip();
      members.push_back(parse_set(depth + 1));
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      break;
    }
    return HFSet::of(std::move(members));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in HF set", 1, pos_ + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

HFSet canonicalize_rec(const RawSet& raw, std::size_t depth, std::size_t& nodes,
                       const CanonicalizeLimits& limits) {
  if (depth > limits.max_depth)
    throw ResourceError("canonicalize: depth limit " + std::to_string(limits.max_depth) + " exceeded");
  if (++nodes > limits.max_nodes)
    throw ResourceError("canonicalize: size limit " + std::to_string(limits.max_nodes) + " exceeded");
  std::vector<HFSet> members;
  members.reserve(raw.elements.size());
  for (const auto& e : raw.elements) members.push_back(canonicalize_rec(e, depth + 1, nodes, limits));
  return HFSet::of(std::move(members));
}

}  // namespace

HFSet HFSet::parse(std::string_view text) { return BracketParser(text).parse_all(); }

HFSet canonicalize(const RawSet& raw, const CanonicalizeLimits& limits) {
  std::size_t nodes = 0;
  return canonicalize_rec(raw, 0, nodes, limits);
}

HFSet kur_pair(HFSet u, HFSet v) { return HFSet::of({HFSet::of({u}), HFSet::of({u, v})}); }

std::optional<std::pair<HFSet, HFSet>> kur_unpair(HFSet w) { return w.kuratowski_parts(); }

std::vector<HFSet> universe(unsigned level, unsigned cap) {
  if (level > cap)
    throw ResourceError("universe level " + std::to_string(level) + " exceeds cap " +
                        std::to_string(cap));
  static std::mutex mu;
  static std::map<unsigned, std::vector<HFSet>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(level); it != cache.end()) return it->second;

  std::vector<HFSet> current;  // V_0 is empty
  for (unsigned k = 0; k < level; ++k) {
    if (current.size() >= 20) throw ResourceError("universe level too large to enumerate");
    std::vector<HFSet> next;
    const std::size_t n = current.size();
    next.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<HFSet> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) subset.push_back(current[i]);
      next.push_back(HFSet::of(std::move(subset)));
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  cache.emplace(level, current);
  return current;
}

void set_interning_limit(std::size_t limit) { Interner::instance().set_limit(limit); }
std::size_t interning_limit() { return Interner::instance().limit(); }
std::size_t interned_count() { return Interner::instance().count(); }

HFSet set_union(HFSet a, HFSet b) {
  std::vector<HFSet> m(a.members().begin(), a.members().end());
  m.insert(m.end(), b.members().begin(), b.members().end());
  return HFSet::of(std::move(m));
}

HFSet set_intersection(HFSet a, HFSet b) {
  std::vector<HFSet> m;
  for (auto x : a.members())
    if (b.contains(x)) m.push_back(x);
  return HFSet::of(std::move(m));
}

HFSet set_difference(HFSet a, HFSet b) {
  std::vector<HFSet> m;
  for (auto x : a.members())
    if (!b.contains(x)) m.push_back(x);
  return HFSet::of(std::move(m));
}

bool is_subset(HFSet a, HFSet b) {
  for (auto x : a.members())
    if (!b.contains(x)) return false;
  return true;
}

bool extensionally_equal(HFSet a, HFSet b) {
  auto covered = [](HFSet from, HFSet in) {
    for (auto x : from.members()) {
      bool found = false;
      for (auto y : in.members()) {
        if (extensionally_equal(x, y)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

}  // namespace pairsat
