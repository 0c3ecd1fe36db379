#pragma once

#include <map>
#include <string>
#include <vector>

#include "nonpolar/jetspace/registry.hpp"

namespace nonpolar::balance {

using jetspace::JetRegistry;
using symcore::Atom;
using symcore::Expr;

struct Equation {
  std::string name;  // continuity, momentum_<i>, pressure
  Expr expr;
};

/// Principal derivatives solved from the system. rho_t and p_t are bound
/// directly; the velocity time derivatives are bound with rho cleared:
/// rho * u<i>_t = momentum_numerators[u<i>_t].
struct PrincipalMap {
  std::map<Atom, Expr> direct;
  std::map<Atom, Expr> rho_cleared;
};

/// Continuity, momentum and pressure equations of a simple nonpolar
/// medium, together with the dissipation Phi = Pi : grad u.
class BalanceSystem {
 public:
  int dimension() const { return registry_->dimension(); }
  const JetRegistry& registry() const { return *registry_; }
  const std::vector<Equation>& equations() const { return equations_; }
  const Equation& continuity() const { return equations_.front(); }
  const Equation& momentum(int i) const { return equations_.at(static_cast<std::size_t>(i)); }
  const Equation& pressure() const { return equations_.back(); }
  const Expr& dissipation() const { return dissipation_; }
  const PrincipalMap& principal() const { return principal_; }

 private:
  friend BalanceSystem build_system(int dimension, const JetRegistry& r);

  const JetRegistry* registry_ = nullptr;
  std::vector<Equation> equations_;
  Expr dissipation_;
  PrincipalMap principal_;
};

/// The registry must outlive the system. Throws DimensionMismatchError when
/// the registry was built for another N.
BalanceSystem build_system(int dimension, const JetRegistry& r);

PrincipalMap solve_principal(const BalanceSystem& s);

struct Restricted {
  Expr expr;
  /// Power of rho the input was multiplied by before elimination.
  int rho_power = 0;
};

/// Eliminates rho_t, u<k>_t and p_t. Terms carrying velocity time
/// derivatives are first multiplied by the smallest power of rho that lets
/// every rho*u<k>_t be replaced by its numerator.
Restricted restrict_to_manifold(const Expr& e, const BalanceSystem& s);

}  // namespace nonpolar::balance
