#include "nonpolar/system/balance.hpp"

#include "nonpolar/errors.hpp"

namespace nonpolar::balance {

BalanceSystem build_system(int dimension, const JetRegistry& r) {
  if (r.dimension() != dimension) {
    throw DimensionMismatchError("system dimension " + std::to_string(dimension) +
                                 " does not match registry dimension " +
                                 std::to_string(r.dimension()));
  }
  const int n = dimension;
  auto A = [](const Atom& a) { return Expr::atom(a); };
  const Expr rho = A(r.rho());

  Expr divergence;
  Expr continuity = A(r.rho_t());
  for (int i = 1; i <= n; ++i) {
    divergence += A(r.u_x(i, i));
    continuity += A(r.u(i)) * A(r.rho_x(i)) + rho * A(r.u_x(i, i));
  }

  BalanceSystem s;
  s.registry_ = &r;
  s.equations_.push_back({"continuity", continuity});

  for (int i = 1; i <= n; ++i) {
    Expr convective;
    Expr stress_divergence;
    for (int j = 1; j <= n; ++j) {
      convective += A(r.u(j)) * A(r.u_x(i, j));
      stress_divergence += jetspace::total_derivative(A(r.pi(i, j)), j, r);
    }
    Expr momentum = rho * (A(r.u_t(i)) + convective) - stress_divergence + A(r.p_x(i));
    s.equations_.push_back({"momentum_" + std::to_string(i), momentum});
    s.principal_.rho_cleared.emplace(r.u_t(i), stress_divergence - A(r.p_x(i)) - rho * convective);
  }

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) s.dissipation_ += A(r.pi(i, j)) * A(r.u_x(i, j));
  }
  Expr advection;
  for (int i = 1; i <= n; ++i) advection += A(r.u(i)) * A(r.p_x(i));
  Expr pressure = A(r.p_t()) + advection + A(r.G()) * divergence + A(r.H()) * s.dissipation_;
  s.equations_.push_back({"pressure", pressure});

  s.principal_.direct.emplace(r.rho_t(), A(r.rho_t()) - continuity);
  s.principal_.direct.emplace(r.p_t(), A(r.p_t()) - pressure);
  return s;
}

PrincipalMap solve_principal(const BalanceSystem& s) {
  return s.principal();
}

Restricted restrict_to_manifold(const Expr& e, const BalanceSystem& s) {
  const auto& principal = s.principal();
  const Atom rho = s.registry().rho();
  for (const auto& [key, value] : principal.direct) {
    for (const auto& atom : value.atoms()) {
      if (principal.direct.count(atom) || principal.rho_cleared.count(atom)) {
        throw CyclicSubstitutionError("principal map is not triangular");
      }
    }
  }

  auto velocity_degree = [&](const symcore::Monomial& m) {
    int d = 0;
    for (const auto& [atom, exponent] : m.factors()) {
      if (principal.rho_cleared.count(atom)) d += exponent;
    }
    return d;
  };

  int power = 0;
  for (const auto& t : e.terms()) {
    power = std::max(power, velocity_degree(t.monomial) - t.monomial.degree(rho));
  }

  Expr cleared;
  for (const auto& t : e.terms()) {
    int m = velocity_degree(t.monomial);
    std::vector<symcore::Monomial::Factor> kept;
    Expr replacement(t.coefficient);
    for (const auto& [atom, exponent] : t.monomial.factors()) {
      auto it = principal.rho_cleared.find(atom);
      if (it != principal.rho_cleared.end()) {
        replacement *= it->second.pow(static_cast<unsigned>(exponent));
      } else if (atom == rho) {
        int left = exponent + power - m;
        if (left > 0) kept.emplace_back(atom, left);
      } else {
        kept.emplace_back(atom, exponent);
      }
    }
    if (t.monomial.degree(rho) == 0 && power - m > 0) kept.emplace_back(rho, power - m);
    cleared += replacement * Expr::monomial(symcore::Monomial::from_factors(std::move(kept)));
  }
  return {symcore::substitute(cleared, principal.direct), power};
}

}  // namespace nonpolar::balance
