#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nonpolar/jetspace/registry.hpp"

namespace nonpolar::liegen {

using jetspace::JetRegistry;
using symcore::Atom;
using symcore::Expr;
using symcore::Rational;

/// Point generator on (t, x, u, p, rho, Pi, G, H):
///   X = xi^t d/dt + xi^x d/dx + eta^u d/du + eta^p d/dp + eta^rho d/drho
///       + mu^Pi d/dPi + mu^G d/dG + mu^H d/dH
/// Coefficients are keyed by base coordinate; a missing key means zero.
class GeneratorSpec {
 public:
  GeneratorSpec() = default;
  explicit GeneratorSpec(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::map<Atom, Expr>& coefficients() const { return coefficients_; }
  Expr coefficient(const Atom& coordinate) const;
  /// Adds to the coefficient of `coordinate`; zero results are erased.
  void add(const Atom& coordinate, const Expr& value);
  bool is_zero() const { return coefficients_.empty(); }

  GeneratorSpec operator+(const GeneratorSpec& other) const;
  GeneratorSpec operator-(const GeneratorSpec& other) const;
  GeneratorSpec scaled(const Expr& factor) const;

  friend bool operator==(const GeneratorSpec& a, const GeneratorSpec& b) {
    return a.coefficients_ == b.coefficients_;
  }

 private:
  std::string name_;
  std::map<Atom, Expr> coefficients_;
};

/// Allowed atoms per coefficient family:
///   xi, eta       t, x, u, p, rho (classical ansatz)
///   mu^Pi         u<k>_x<l>, Pi<i><j>
///   mu^G, mu^H    p, rho, G, H
/// Unknown constants are allowed everywhere. Throws AnsatzError naming the
/// offending atom, or when a key is not a base coordinate.
void check_ansatz(const GeneratorSpec& g, const JetRegistry& r);

/// Human-readable description of the admitted argument sets.
std::vector<std::pair<std::string, std::string>> ansatz_description();

/// g(f): the generator acting as a derivation on f over the base
/// coordinates.
Expr act(const GeneratorSpec& g, const Expr& f);

/// Coefficient-wise commutator [g1, g2]^c = g1(g2^c) - g2(g1^c).
GeneratorSpec bracket(const GeneratorSpec& g1, const GeneratorSpec& g2, const JetRegistry& r);

/// Generator extended to the jets u, p, rho of order 1 and 2 and to the
/// stress derivatives Pi^ij_kl.
class ProlongedGenerator {
 public:
  const GeneratorSpec& base() const { return base_; }
  const JetRegistry& registry() const { return *registry_; }
  /// Coefficient of every coordinate the generator acts on. An entry holds
  /// nullopt when it could not be formed inside the registered jet space.
  const std::map<Atom, std::optional<Expr>>& coefficients() const { return coefficients_; }
  /// Zero for coordinates the generator does not move; throws
  /// JetOrderError for an unavailable coefficient.
  Expr coefficient(const Atom& coordinate) const;

 private:
  friend ProlongedGenerator prolong(const GeneratorSpec& g, const JetRegistry& r);
  GeneratorSpec base_;
  std::map<Atom, std::optional<Expr>> coefficients_;
  const JetRegistry* registry_ = nullptr;
};

/// Standard prolongation:
///   zeta^a_w  = D_w(eta^a) - sum_v D_w(xi^v) a_v
///   zeta^a_wv = D_v(zeta^a_w) - sum_z D_v(xi^z) a_wz
///   mu^ij_kl  = Dt_kl(mu^ij) - sum_rs Pi^ij_rs Dt_kl(zeta^{u_r}_{x_s})
/// with Dt_kl = d/du<k>_x<l> + sum_ab Pi^ab_kl d/dPi^ab.
/// Checks the ansatz first. The registry must outlive the result.
ProlongedGenerator prolong(const GeneratorSpec& g, const JetRegistry& r);

/// Dt_kl of the element-argument space.
Expr element_total_derivative(const Expr& e, int k, int l, const JetRegistry& r);

/// sum_c coefficient(c) * de/dc over the atoms of e.
Expr apply(const ProlongedGenerator& pg, const Expr& e);

struct Contribution {
  Atom coordinate;
  Expr term;
};

/// Per-coordinate terms of apply() before they are summed.
std::vector<Contribution> apply_traced(const ProlongedGenerator& pg, const Expr& e);

}  // namespace nonpolar::liegen
