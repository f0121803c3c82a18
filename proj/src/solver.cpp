#include "pairsat/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "pairsat/error.hpp"
#include "pairsat/evaluator.hpp"
#include "pairsat/normalize.hpp"
#include "pairsat/validate.hpp"

namespace pairsat {

std::string SearchBound::to_string() const {
  return "level " + std::to_string(universe_level) + ", breadth " + std::to_string(map_breadth) + ", cap " +
         std::to_string(candidate_cap);
}

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kMax / b) return kMax;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step
    std::uint64_t num = n - k + i;
    if (r > kMax / num) return kMax;
    r = r * num / i;
  }
  return r;
}

std::uint64_t level_size(unsigned level) {
  static const std::uint64_t sizes[] = {0, 1, 2, 4, 16, 65536};
  return level < 6 ? sizes[level] : kMax;
}

double ms_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
}

// Free variables of `f` in order of first occurrence.
void occurrence_order(const Formula& f, const std::set<Variable>& free, std::set<Variable>& seen,
                      std::vector<Variable>& out) {
  std::vector<Variable> here = f.vars();
  if (is_quantifier(f.kind())) here = {f.domain_var()};
  for (const auto& v : here)
    if (free.count(v) && seen.insert(v).second) out.push_back(v);
  for (const auto& c : f.children()) occurrence_order(c, free, seen, out);
}

enum class Source { Universe, Members, NonpairMembers, PairFirst, PairSecond, Equal };

struct Conjunct {
  CompiledFormula compiled;
  std::vector<int> globals;  // global index per free slot
  int check_at = -1;
};

struct Plan {
  std::vector<Variable> vars;  // search order
  std::vector<Source> source;
  std::vector<int> provider;
  std::vector<Conjunct> conjuncts;
  std::vector<std::vector<int>> checks;  // conjunct indices checked at each position
  std::vector<int> initial_checks;       // conjuncts without variables
  std::uint64_t estimate = 1;
};

std::uint64_t source_estimate(Source s, const Variable& v, const SearchBound& b, bool set_container) {
  switch (s) {
    case Source::Universe:
      return v.sort == Sort::Map ? map_candidate_count(b.universe_level, b.map_breadth)
                                 : level_size(b.universe_level);
    case Source::Members:
    case Source::NonpairMembers: return std::max<std::uint64_t>(1, level_size(b.universe_level - 1));
    case Source::PairFirst:
    case Source::PairSecond:
      return set_container ? std::max<std::uint64_t>(1, level_size(b.universe_level - 1))
                           : std::max<std::uint64_t>(1, b.map_breadth);
    case Source::Equal: return 1;
  }
  return 1;
}

int source_rank(Source s) {
  switch (s) {
    case Source::Equal: return 0;
    case Source::PairFirst:
    case Source::PairSecond: return 1;
    default: return 2;
  }
}

Plan make_plan(const std::vector<Formula>& conjuncts, const SearchBound& b) {
  // Occurrence order over the whole conjunction.
  std::vector<Variable> occ;
  std::set<Variable> seen;
  for (const auto& c : conjuncts) occurrence_order(c, free_vars(c).all(), seen, occ);

  // Candidate restrictions from positive top-level literals.
  struct Edge {
    Variable dependent;
    Source source;
    Variable provider;
  };
  std::vector<Edge> edges;
  for (const auto& c : conjuncts) {
    const auto& v = c.vars();
    switch (c.kind()) {
      case Kind::MemberSet: edges.push_back({v[0], Source::Members, v[1]}); break;
      case Kind::MemberNonpairs: edges.push_back({v[0], Source::NonpairMembers, v[1]}); break;
      case Kind::PairMember:
        edges.push_back({v[0], Source::PairFirst, v[2]});
        edges.push_back({v[1], Source::PairSecond, v[2]});
        break;
      case Kind::EqualSet:
      case Kind::EqualMap:
        if (v[0] != v[1]) {
          edges.push_back({v[0], Source::Equal, v[1]});
          edges.push_back({v[1], Source::Equal, v[0]});
        }
        break;
      default: break;
    }
  }

  Plan plan;
  std::map<Variable, int> position;
  std::vector<Variable> remaining = occ;
  while (!remaining.empty()) {
    std::size_t choice = remaining.size();
    Source src = Source::Universe;
    int prov = -1;
    // Prefer a variable whose candidates come from an already placed provider.
    int best_rank = 99;
    for (std::size_t r = 0; r < remaining.size() && best_rank > 0; ++r) {
      for (const auto& e : edges) {
        if (e.dependent != remaining[r]) continue;
        auto it = position.find(e.provider);
        if (it == position.end()) continue;
        if (source_rank(e.source) < best_rank) {
          best_rank = source_rank(e.source);
          choice = r;
          src = e.source;
          prov = it->second;
        }
      }
      if (choice != remaining.size() && best_rank <= 1) break;
    }
    if (choice == remaining.size()) {
      // Otherwise the first variable that does not wait on an unplaced provider.
      for (std::size_t r = 0; r < remaining.size() && choice == remaining.size(); ++r) {
        bool waits = false;
        for (const auto& e : edges)
          if (e.dependent == remaining[r] && e.source != Source::Equal && !position.count(e.provider))
            waits = true;
        if (!waits) choice = r;
      }
      if (choice == remaining.size()) choice = 0;
    }
    Variable v = remaining[choice];
    remaining.erase(remaining.begin() + static_cast<long>(choice));
    position[v] = static_cast<int>(plan.vars.size());
    plan.vars.push_back(v);
    plan.source.push_back(src);
    plan.provider.push_back(prov);
    bool set_container = prov >= 0 && plan.vars[static_cast<std::size_t>(prov)].sort == Sort::Set;
    plan.estimate = sat_mul(plan.estimate, source_estimate(src, v, b, set_container));
  }

  plan.checks.resize(plan.vars.size());
  for (const auto& c : conjuncts) {
    Conjunct cj{CompiledFormula(c), {}, -1};
    for (const auto& v : cj.compiled.free_slots()) {
      int g = position.at(v);
      cj.globals.push_back(g);
      cj.check_at = std::max(cj.check_at, g);
    }
    const int idx = static_cast<int>(plan.conjuncts.size());
    if (cj.check_at < 0)
      plan.initial_checks.push_back(idx);
    else
      plan.checks[static_cast<std::size_t>(cj.check_at)].push_back(idx);
    plan.conjuncts.push_back(std::move(cj));
  }
  return plan;
}

class Search {
 public:
  Search(const Plan& plan, const SearchBound& b) : plan_(plan), bound_(b), env_(plan.vars.size()) {
    for (const auto& c : plan.conjuncts) locals_.emplace_back(c.compiled.slot_count());
  }

  std::vector<HFSet> candidates(std::size_t i) const {
    const Variable& v = plan_.vars[i];
    const Source s = plan_.source[i];
    if (s == Source::Universe) {
      if (v.sort == Sort::Map) return map_candidates(bound_.universe_level, bound_.map_breadth);
      return universe(bound_.universe_level);
    }
    const HFSet p = env_[static_cast<std::size_t>(plan_.provider[i])];
    std::vector<HFSet> out;
    switch (s) {
      case Source::Equal: out.push_back(p); break;
      case Source::Members:
        out.assign(p.members().begin(), p.members().end());
        break;
      case Source::NonpairMembers:
        for (auto m : p.members())
          if (!m.kuratowski_parts()) out.push_back(m);
        break;
      case Source::PairFirst:
      case Source::PairSecond:
        for (auto m : p.members())
          if (auto parts = m.kuratowski_parts()) out.push_back(s == Source::PairFirst ? parts->first : parts->second);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        break;
      default: break;
    }
    return out;
  }

  bool check(int conjunct) {
    const Conjunct& c = plan_.conjuncts[static_cast<std::size_t>(conjunct)];
    auto& local = locals_[static_cast<std::size_t>(conjunct)];
    for (std::size_t s = 0; s < c.globals.size(); ++s) local[s] = env_[static_cast<std::size_t>(c.globals[s])];
    ++evaluations;
    return c.compiled.eval(local, PairingSpec::kuratowski());
  }

  bool initial_ok() {
    for (int c : plan_.initial_checks)
      if (!check(c)) return false;
    return true;
  }

  // Tries one value at position i; recurses on success.
  bool assign(std::size_t i, HFSet value, const std::atomic<bool>* cancel) {
    env_[i] = value;
    ++assignments;
    for (int c : plan_.checks[i])
      if (!check(c)) return false;
    return descend(i + 1, cancel);
  }

  bool descend(std::size_t i, const std::atomic<bool>* cancel) {
    if (i == plan_.vars.size()) return true;
    if (cancel && cancel->load(std::memory_order_relaxed)) return false;
    for (auto value : candidates(i))
      if (assign(i, value, cancel)) return true;
    return false;
  }

  Interpretation model() const {
    Interpretation out;
    for (std::size_t i = 0; i < plan_.vars.size(); ++i) out.assign(plan_.vars[i], env_[i]);
    return out;
  }

  std::uint64_t assignments = 0;
  std::uint64_t evaluations = 0;

 private:
  const Plan& plan_;
  SearchBound bound_;
  std::vector<HFSet> env_;
  std::vector<std::vector<HFSet>> locals_;
};

bool contains_quantifier(const Formula& f) {
  if (is_quantifier(f.kind())) return true;
  return std::any_of(f.children().begin(), f.children().end(), contains_quantifier);
}

void check_bound(const SearchBound& b) {
  if (b.universe_level < 1 || b.universe_level > 4)
    throw ResourceError("universe level " + std::to_string(b.universe_level) + " outside the supported range 1..4");
}

}  // namespace

std::uint64_t map_candidate_count(unsigned level, unsigned breadth) {
  const std::uint64_t n = sat_mul(level_size(level), level_size(level));
  std::uint64_t total = 0;
  for (unsigned k = 0; k <= breadth && k <= n; ++k) total = sat_add(total, binomial(n, k));
  return total;
}

const std::vector<HFSet>& map_candidates(unsigned level, unsigned breadth) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::vector<HFSet>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(level, breadth);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (map_candidate_count(level, breadth) > 50'000'000)
    throw ResourceError("too many map candidates at level " + std::to_string(level) + ", breadth " +
                        std::to_string(breadth));
  std::vector<HFSet> pairs;
  for (auto u : universe(level))
    for (auto v : universe(level)) pairs.push_back(kur_pair(u, v));
  std::vector<HFSet> out;
  std::vector<HFSet> current;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    out.push_back(HFSet::of(current));
    if (current.size() == breadth) return;
    for (std::size_t i = start; i < pairs.size(); ++i) {
      current.push_back(pairs[i]);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return cache.emplace(key, std::move(out)).first->second;
}

std::optional<Interpretation> solve_conjunction(const std::vector<Formula>& conjuncts, const SearchBound& b,
                                                const SolveOptions& options, SearchStats* stats) {
  check_bound(b);
  Plan plan = make_plan(conjuncts, b);
  if (stats) stats->candidate_space = std::max(stats->candidate_space, plan.estimate);
  if (plan.estimate > b.candidate_cap) {
    std::string names;
    for (const auto& v : plan.vars) names += (names.empty() ? "" : " ") + v.display();
    const std::uint64_t factor = plan.estimate / std::max<std::uint64_t>(1, b.candidate_cap);
    throw ResourceError("candidate space " + (plan.estimate == kMax ? std::string(">= 2^64") : std::to_string(plan.estimate)) +
                        " exceeds cap " + std::to_string(b.candidate_cap) + " (blow-up factor " +
                        std::to_string(factor) + "x) over variables " + names);
  }

  Search root(plan, b);
  auto record = [&](const Search& s) {
    if (stats) {
      stats->assignments += s.assignments;
      stats->evaluations += s.evaluations;
    }
  };
  if (!root.initial_ok()) {
    record(root);
    return std::nullopt;
  }
  if (plan.vars.empty()) {
    record(root);
    return root.model();
  }

  const std::vector<HFSet> first = root.candidates(0);
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(first.size())));
  if (jobs <= 1) {
    bool found = false;
    for (auto v : first)
      if ((found = root.assign(0, v, nullptr))) break;
    record(root);
    if (found) return root.model();
    return std::nullopt;
  }

  // Each candidate of the first variable is one partition; the lowest
  // partition index holding a model wins, matching the sequential order.
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{first.size()};
  std::mutex mu;
  std::optional<Interpretation> winner;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      Search s(plan, b);
      for (;;) {
        std::size_t idx = next.fetch_add(1);
        if (idx >= first.size() || idx > best.load()) break;
        if (s.assign(0, first[idx], nullptr)) {
          std::lock_guard<std::mutex> lock(mu);
          if (idx < best.load()) {
            best.store(idx);
            winner = s.model();
          }
          break;
        }
      }
      std::lock_guard<std::mutex> lock(mu);
      record(s);
    });
  }
  for (auto& t : workers) t.join();
  return winner;
}

SatResult decide_bounded(const Formula& f, const SearchBound& b, const SolveOptions& options) {
  check_bound(b);
  SatResult result;
  result.bound = b;
  const auto start = std::chrono::steady_clock::now();
  double search_ms = 0;
  std::optional<Interpretation> found;

  auto search = [&](const std::vector<Formula>& conjuncts) {
    const auto t = std::chrono::steady_clock::now();
    ++result.stats.conjunctions;
    found = solve_conjunction(conjuncts, b, options, &result.stats);
    search_ms += ms_since(t);
    return !found.has_value();
  };

  auto base = validate(f, {Language::Base, true});
  if (base.empty()) {
    for_each_normalized_conjunction(f, [&](const NormalizedConjunction& nc) { return search(nc.conjuncts); });
  } else if (is_valid(f, {Language::Nonpairs, false})) {
    auto parts = conjuncts_of(f);
    for (const auto& c : parts) {
      PrenexView view = prenex_view(c);
      bool ok = !contains_quantifier(view.matrix);
      for (const auto& q : view.prefix) ok = ok && is_universal(q.kind());
      if (!ok) throw ContractError("nonpairs-fragment input must be a conjunction of universal prenex formulas");
    }
    search(parts);
  } else {
    throw ContractError("formula does not validate: " + base.front().message);
  }

  result.stats.search_ms = search_ms;
  result.stats.normalize_ms = ms_since(start) - search_ms;
  if (!found) return result;

  auto fv = free_vars(f).all();
  Interpretation model(found->pairing());
  for (const auto& v : fv) model.assign(v, found->value(v).value_or(HFSet()));
  if (!extended_evaluate(model, f)) throw ContractError("internal error: model failed re-verification");
  result.kind = SatResult::Kind::Sat;
  result.model = std::move(model);
  return result;
}

std::vector<Interpretation> oracle_enumerate(const Formula& f, const SearchBound& b) {
  check_bound(b);
  std::vector<Variable> vars;
  for (const auto& v : free_vars(f).all()) vars.push_back(v);
  std::uint64_t space = 1;
  for (const auto& v : vars)
    space = sat_mul(space, v.sort == Sort::Map ? map_candidate_count(b.universe_level, b.map_breadth)
                                               : level_size(b.universe_level));
  if (space > b.candidate_cap)
    throw ResourceError("oracle candidate space " + std::to_string(space) + " exceeds cap " +
                        std::to_string(b.candidate_cap));

  CompiledFormula compiled(f);
  std::vector<const std::vector<HFSet>*> domains;
  const auto& sets = universe(b.universe_level);
  for (const auto& v : vars)
    domains.push_back(v.sort == Sort::Map ? &map_candidates(b.universe_level, b.map_breadth) : &sets);

  std::vector<Interpretation> out;
  std::vector<HFSet> env(compiled.slot_count());
  std::vector<std::size_t> idx(vars.size(), 0);
  for (const auto* d : domains)
    if (d->empty()) return out;
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) env[static_cast<std::size_t>(compiled.slot_of(vars[i]))] = (*domains[i])[idx[i]];
    if (compiled.eval(env, PairingSpec::kuratowski())) {
      Interpretation m;
      for (std::size_t i = 0; i < vars.size(); ++i) m.assign(vars[i], (*domains[i])[idx[i]]);
      out.push_back(std::move(m));
    }
    std::size_t k = vars.size();
    while (k > 0) {
      --k;
      if (++idx[k] < domains[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (vars.empty()) return out;
  }
}

}  // namespace pairsat
