#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonpolar/liegen/flow.hpp"
#include "nonpolar/liegen/generator.hpp"
#include "nonpolar/system/balance.hpp"

namespace nonpolar::deteq {

using balance::BalanceSystem;
using jetspace::JetRegistry;
using liegen::FiniteTransformation;
using liegen::GeneratorSpec;
using symcore::Atom;
using symcore::Expr;
using symcore::Monomial;

/// Parametric atoms used for splitting: every jet that is not principal
/// (rho_t, u<k>_t, p_t) and every Pi, Pi_kl, G, H atom. t, x, u, p, rho and
/// unknown constants stay in the coefficients.
bool is_parametric(const Atom& a, const JetRegistry& r);

struct Condition {
  Monomial monomial;
  Expr coefficient;
};

struct SplitEquation {
  std::string equation;
  Expr residual;  // restricted and rho-cleared
  int rho_power = 0;
  std::vector<Condition> conditions;  // canonical monomial order
};

struct DeterminingSystem {
  std::string generator;
  std::vector<SplitEquation> equations;
  std::vector<Atom> parametric;  // parametric atoms that occur, sorted

  bool empty() const;
};

/// apply(prolong(g), E) for every equation E, restricted to the manifold and
/// split by parametric monomials.
DeterminingSystem determining_equations(const BalanceSystem& s, const GeneratorSpec& g);

/// Solves the conditions for the registry's unknown constants; nullopt when
/// no member of the family is admitted.
std::optional<std::map<Atom, Expr>> solve_unknowns(const DeterminingSystem& ds,
                                                   const JetRegistry& r);

struct FiniteEquationCheck {
  std::string equation;
  bool pass = false;
  std::optional<Expr> lambda;  // pullback = lambda * equation
};

struct FiniteVerdict {
  std::string generator;
  std::vector<FiniteEquationCheck> equations;
  bool pass() const;
};

/// Pulls every equation back through f and checks that it equals
/// lambda(a) times the original with lambda free of all coordinates.
FiniteVerdict finite_check(const BalanceSystem& s, const FiniteTransformation& f);

struct EquationVerdict {
  std::string equation;
  bool zero = true;
  int rho_power = 0;
  std::size_t condition_count = 0;
  std::optional<Condition> witness;  // first nonzero condition
};

struct Verdict {
  std::string generator;
  std::vector<EquationVerdict> equations;
  std::optional<FiniteVerdict> finite;
  /// Set when a finite check ran: infinitesimal zero <=> finite pass.
  std::optional<bool> agreement;

  bool zero() const;
};

/// Infinitesimal check of a concrete generator (no unknown constants), plus
/// the finite check when a flow is given.
Verdict verify(const BalanceSystem& s, const GeneratorSpec& g,
               const FiniteTransformation* flow = nullptr);

struct VerifyJob {
  GeneratorSpec generator;
  std::optional<FiniteTransformation> flow;
};

/// Runs verify over the jobs in parallel; results keep the job order.
std::vector<Verdict> verify_batch(const BalanceSystem& s, const std::vector<VerifyJob>& jobs);
/// Serial reference for verify_batch.
std::vector<Verdict> verify_batch_serial(const BalanceSystem& s, const std::vector<VerifyJob>& jobs);

}  // namespace nonpolar::deteq
