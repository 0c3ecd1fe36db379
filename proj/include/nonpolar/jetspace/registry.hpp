#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nonpolar/symcore/expr.hpp"
#include "nonpolar/symcore/symbols.hpp"

namespace nonpolar::jetspace {

using symcore::Atom;
using symcore::Expr;

enum class CoordinateRole {
  Independent,    // t, x1..xN
  Dependent,      // u1..uN, p, rho
  Jet,            // derivatives of dependents, order 1 or 2
  Unknown,        // constant unknowns of an ansatz family (alpha, beta, ...)
  FlowParameter,  // group parameter a and the symbols exp(a), exp(-a)
};

struct CoordinateInfo {
  CoordinateRole role = CoordinateRole::Independent;
  /// Independent/dependent index (0-based; independents: 0 = t, i = x_i;
  /// dependents: k-1 = u_k, N = p, N+1 = rho). For jets: the dependent.
  int index = -1;
  /// Jets only: sorted independent indices differentiated by.
  std::vector<int> order;
};

/// Symbols standing for the group parameter a of a one-parameter flow.
/// `exp_pos` and `exp_neg` are e^a and e^-a kept as polynomial atoms.
struct FlowSymbols {
  Atom a;
  Atom exp_pos;
  Atom exp_neg;
};

/// Variables of the extended space (t, x, u, p, rho, jets, Pi^ij,
/// Pi^ij_kl, G, H) for spatial dimension N.
///
/// Name grammar (frozen):
///   independents  t, x<i>
///   dependents    u<k>, p, rho
///   first jets    u<k>_t, u<k>_x<l>, p_t, p_x<i>, rho_t, rho_x<i>
///   second jets   u<k>_x<l>x<j> (l <= j), u<k>_tx<l>
///   elements      Pi<i><j> (i <= j; Pi<j><i> is accepted as an alias),
///                 G, H
///   derivatives   Pi<i><j>_d_u<k>x<l>, G_p, G_rho, H_prho, ...
///   flow symbols  a, exp_a, exp_ma, b, exp_b, exp_mb
/// Second jets with l > j are accepted as aliases of the sorted name.
class JetRegistry {
 public:
  int dimension() const { return dimension_; }
  const symcore::SymbolTable& symbols() const { return symbols_; }

  /// n, m and A of R^{n+m+A}.
  int independent_count() const { return dimension_ + 1; }
  int dependent_count() const { return dimension_ + 2; }
  int element_count() const { return static_cast<int>(element_coordinates().size()); }

  Atom independent(int w) const;  // 0 = t
  Atom t() const { return independent(0); }
  Atom x(int i) const { return independent(i); }
  Atom dependent(int d) const;
  Atom u(int k) const { return dependent(k - 1); }
  Atom p() const { return dependent(dimension_); }
  Atom rho() const { return dependent(dimension_ + 1); }

  /// Registered jet of `dep` by the given independents; nullopt if the jet
  /// is not part of the space.
  std::optional<Atom> jet(int dep, std::vector<int> independents) const;
  Atom u_t(int k) const;
  Atom u_x(int k, int l) const;
  Atom u_xx(int k, int l, int j) const;
  Atom u_tx(int k, int l) const;
  Atom p_t() const;
  Atom p_x(int i) const;
  Atom rho_t() const;
  Atom rho_x(int i) const;

  Atom pi(int i, int j) const;
  Atom pi_d(int i, int j, int k, int l) const;
  Atom G() const { return Atom::function(g_id_); }
  Atom H() const { return Atom::function(h_id_); }

  const CoordinateInfo& info(const Atom& coordinate) const;
  bool has_role(const Atom& a, CoordinateRole role) const;
  /// Jet order of a coordinate (0 for non-jets).
  int jet_order(const Atom& a) const;

  const std::vector<Atom>& independents() const { return independents_; }
  const std::vector<Atom>& dependents() const { return dependents_; }
  const std::vector<Atom>& first_jets() const { return first_jets_; }
  const std::vector<Atom>& second_jets() const { return second_jets_; }
  std::vector<Atom> stress() const;
  std::vector<Atom> stress_derivatives() const;
  /// Pi^ij, Pi^ij_kl, G, H.
  std::vector<Atom> element_coordinates() const;
  /// Coordinates a point generator acts on: t, x, u, p, rho, Pi^ij, G, H.
  std::vector<Atom> base_coordinates() const;
  const std::vector<Atom>& unknowns() const { return unknowns_; }
  FlowSymbols flow_symbols(int slot) const;

  std::string name(const Atom& a) const { return symbols_.name(a); }

 private:
  friend JetRegistry build_registry(int dimension, const std::vector<std::string>& unknowns);

  int add(const std::string& name, CoordinateInfo info);

  int dimension_ = 0;
  symcore::SymbolTable symbols_;
  std::vector<CoordinateInfo> infos_;
  std::vector<Atom> independents_;
  std::vector<Atom> dependents_;
  std::vector<Atom> first_jets_;
  std::vector<Atom> second_jets_;
  std::vector<Atom> unknowns_;
  std::map<std::pair<int, std::vector<int>>, int> jets_;
  std::vector<std::vector<int>> pi_ids_;
  int g_id_ = -1;
  int h_id_ = -1;
  std::vector<FlowSymbols> flow_;
};

/// Throws UnsupportedDimensionError unless N is 1, 2 or 3. `unknowns` are
/// extra constant symbols usable in generator coefficients.
JetRegistry build_registry(int dimension, const std::vector<std::string>& unknowns = {});

/// Total derivative D_w (w = 0 for t, i for x_i). Function atoms are
/// differentiated through their declared arguments. Throws JetOrderError
/// when the result would leave the registered jet space.
Expr total_derivative(const Expr& e, int w, const JetRegistry& r);

}  // namespace nonpolar::jetspace
