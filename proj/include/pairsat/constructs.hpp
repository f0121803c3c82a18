#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pairsat/formula.hpp"
#include "pairsat/interpretation.hpp"

namespace pairsat {

/// Signature of a set-theoretic construct: its name, argument sorts and a
/// readable rendering such as `x = y ∪ z`.
struct ConstructInfo {
  std::string name;
  std::vector<Sort> sorts;
  std::vector<std::string> params;
  std::string meaning;
};

/// All 29 constructs, in table order.
const std::vector<ConstructInfo>& construct_table();
const ConstructInfo& construct_info(const std::string& name);

struct ConstructCall {
  std::string name;
  std::vector<Variable> args;
};

/// Builds a call from bare argument names (a leading `@` is accepted for
/// map arguments). Throws ContractError on unknown names or wrong arity.
ConstructCall make_call(const std::string& name, const std::vector<std::string>& args);

/// The defining formula with core atoms only. Bound variables are renamed
/// with primes so they never capture an argument. Throws ContractError on
/// unknown names, wrong arity or wrong sorts.
Formula expand(const ConstructCall& call);

/// Direct computation of the construct on the values of `i`, using the
/// pairing of `i` to read map values.
bool oracle_check(const ConstructCall& call, const Interpretation& i);

struct SweepReport {
  std::string name;
  std::uint64_t interpretations = 0;
  std::uint64_t agreements = 0;
  std::optional<Interpretation> first_mismatch;
  double seconds = 0;

  bool ok() const { return interpretations == agreements; }
};

/// Compares evaluate(expand(row)) with oracle_check(row) on every
/// interpretation of the row's arguments: set arguments over V_level, map
/// arguments over sets of at most `breadth` Kuratowski pairs from V_level².
SweepReport sweep_construct(const std::string& name, unsigned level = 3, unsigned breadth = 3);

enum class DomRewrite { Range, Composition, Image };

struct RewriteResult {
  Formula formula;
  /// Auxiliary variables introduced by the rewrite (`inv$f`, `id$x`, `R$f`).
  std::vector<Variable> auxiliaries;
};

/// Replacements for the literal `x sub dom(@f)`:
///  Range:       x sub ran(@inv$f) ∧ inverse(inv$f, f)
///  Composition: identity_on(id$x, x) ∧ inverse(inv$f, f) ∧ @id$x sub comp(@f, @inv$f)
///  Image:       inverse(inv$f, f) ∧ x sub img(@inv$f, R$f)
/// Range and Composition are equivalent to the literal once the auxiliaries
/// are existentially read; Image is only equisatisfiable.
RewriteResult rewrite_dom_literal(DomRewrite kind, const Variable& x, const Variable& f);

/// Extends `i` with the intended auxiliary values: inv$f = (i f)⁻¹,
/// id$x = identity on i x, R$f = range(i f).
Interpretation dom_rewrite_witness(DomRewrite kind, const Interpretation& i, const Variable& x, const Variable& f);

/// For Range or Composition: on every interpretation of x (over V_level)
/// and @f (≤ breadth pairs), `x sub dom(@f)` holds iff some choice of the
/// auxiliaries within the same bound satisfies the rewrite, and iff the
/// witness of dom_rewrite_witness does.
SweepReport sweep_dom_rewrite(DomRewrite kind, unsigned level = 3, unsigned breadth = 3);

}  // namespace pairsat
