#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pairsat/formula.hpp"
#include "pairsat/interpretation.hpp"

namespace pairsat {

/// Finite search space: set variables range over V_level, map variables
/// over sets of at most `map_breadth` Kuratowski pairs drawn from V_level².
struct SearchBound {
  unsigned universe_level = 3;
  unsigned map_breadth = 4;
  std::uint64_t candidate_cap = 10'000'000;

  std::string to_string() const;
};

struct SearchStats {
  std::uint64_t conjunctions = 0;
  /// Largest up-front candidate-space estimate over the searched conjunctions.
  std::uint64_t candidate_space = 0;
  std::uint64_t assignments = 0;
  std::uint64_t evaluations = 0;
  double normalize_ms = 0;
  double search_ms = 0;
};

struct SatResult {
  enum class Kind { Sat, NoModelWithinBound };
  Kind kind = Kind::NoModelWithinBound;
  /// Present iff Sat; restricted to the free variables of the input.
  std::optional<Interpretation> model;
  SearchBound bound;
  SearchStats stats;

  bool sat() const { return kind == Kind::Sat; }
};

struct SolveOptions {
  /// Worker threads splitting the candidates of the first search variable.
  unsigned jobs = 1;
};

/// Bounded model search. Base-language input (extension literals allowed)
/// goes through normalized_conjunctions; nonpairs-fragment input must be a
/// conjunction of universal prenex formulas and literals and is searched
/// directly. A Sat model is re-checked against `f`.
/// Throws ResourceError when a conjunction's candidate space exceeds the cap.
SatResult decide_bounded(const Formula& f, const SearchBound& b = {}, const SolveOptions& options = {});

/// Searches one conjunction. The model covers every variable of the conjuncts.
std::optional<Interpretation> solve_conjunction(const std::vector<Formula>& conjuncts, const SearchBound& b,
                                                const SolveOptions& options = {}, SearchStats* stats = nullptr);

/// Every model of `f` over its own free variables within the bound, by
/// naive enumeration (variables in sorted order, values in canonical order).
std::vector<Interpretation> oracle_enumerate(const Formula& f, const SearchBound& b = {});

/// Number of candidate map values: sum over k ≤ breadth of C(|V_level|², k).
std::uint64_t map_candidate_count(unsigned level, unsigned breadth);
/// Candidate map values in canonical order.
const std::vector<HFSet>& map_candidates(unsigned level, unsigned breadth);

}  // namespace pairsat
