#pragma once

#include <map>
#include <string>

#include "pairsat/formula.hpp"
#include "pairsat/interpretation.hpp"
#include "pairsat/normalize.hpp"

namespace pairsat {

/// Map variable f -> fresh set variable x_f (named `p$f`), plus the fresh
/// universe variable (named `U$0`).
struct RenamingMap {
  std::map<std::string, std::string> forward;
  std::string universe = "U$0";

  Variable set_var_for(const std::string& map_name) const;
  Variable universe_var() const { return Variable::set(universe); }
};

/// Builds the renaming for ψ: names avoid every name occurring in ψ.
RenamingMap make_renaming(const Formula& psi);

struct TauResult {
  Formula formula;
  RenamingMap renaming;
};

/// (∀x∈y) -> (∀x∈nonpairs(y)), x∈y -> x∈nonpairs(y), f -> x_f.
TauResult tau(const NormalizedConjunction& psi);
Formula tau(const Formula& f, const RenamingMap& r);

struct PsiPrime {
  Formula formula;
  Formula tau;
  RenamingMap renaming;
};

/// ψ′ = τ(ψ) ∧ ⋀_z (∀[x,y]∈z)(x≠x) ∧ ⋀_f (∀x∈nonpairs(x_f))(x≠x) ∧ ⋀_z z∈nonpairs(U),
/// with z ranging over the free set variables and f over the free map
/// variables of ψ.
PsiPrime build_psi_prime(const NormalizedConjunction& psi);

/// Same set-variable values; each map value transported pair by pair to `p`.
Interpretation rebase_pairing(const Interpretation& i, const PairingSpec& p);

/// From a model of ψ to a model of ψ′ over the delta pairing with
/// Δ = {i z : z free set variable of ψ}. Throws ContractError when `i`
/// does not satisfy ψ or the result fails to satisfy ψ′.
Interpretation transfer_model_backward(const Interpretation& i, const NormalizedConjunction& psi);

/// From a model of ψ′ to a model of ψ: I f = j x_f. Throws ContractError
/// when `j` does not satisfy ψ′ or the result fails to satisfy ψ.
Interpretation transfer_model_forward(const Interpretation& j, const NormalizedConjunction& psi,
                                      const RenamingMap& r);

}  // namespace pairsat
