#include "nonpolar/deteq/determining.hpp"

#include <set>

#include "nonpolar/errors.hpp"
#include "nonpolar/symcore/linear.hpp"

namespace nonpolar::deteq {

using jetspace::CoordinateRole;

bool is_parametric(const Atom& a, const JetRegistry& r) {
  if (a.is_function_like()) return true;
  if (!r.has_role(a, CoordinateRole::Jet)) return false;
  const auto& info = r.info(a);
  const bool principal = info.order.size() == 1 && info.order.front() == 0;
  return !principal;
}

bool DeterminingSystem::empty() const {
  for (const auto& e : equations) {
    if (!e.conditions.empty()) return false;
  }
  return true;
}

DeterminingSystem determining_equations(const BalanceSystem& s, const GeneratorSpec& g) {
  const auto& r = s.registry();
  const auto pg = liegen::prolong(g, r);
  DeterminingSystem ds;
  ds.generator = g.name();
  std::set<Atom> seen;
  for (const auto& eq : s.equations()) {
    SplitEquation split;
    split.equation = eq.name;
    auto restricted = balance::restrict_to_manifold(liegen::apply(pg, eq.expr), s);
    split.residual = restricted.expr;
    split.rho_power = restricted.rho_power;
    for (auto& [monomial, coefficient] :
         symcore::collect(split.residual, [&](const Atom& a) { return is_parametric(a, r); })) {
      for (const auto& f : monomial.factors()) seen.insert(f.first);
      split.conditions.push_back({monomial, coefficient});
    }
    ds.equations.push_back(std::move(split));
  }
  ds.parametric.assign(seen.begin(), seen.end());
  return ds;
}

std::optional<std::map<Atom, Expr>> solve_unknowns(const DeterminingSystem& ds,
                                                   const JetRegistry& r) {
  std::vector<Expr> conditions;
  for (const auto& eq : ds.equations) {
    for (const auto& c : eq.conditions) {
      auto more = symcore::linear_conditions(c.coefficient, r.unknowns());
      conditions.insert(conditions.end(), more.begin(), more.end());
    }
  }
  return symcore::solve_linear(conditions, r.unknowns());
}

// ----------------------------------------------------------- finite check

bool FiniteVerdict::pass() const {
  for (const auto& e : equations) {
    if (!e.pass) return false;
  }
  return true;
}

FiniteVerdict finite_check(const BalanceSystem& s, const FiniteTransformation& f) {
  const auto& r = s.registry();
  FiniteVerdict out;
  out.generator = f.generator();
  for (const auto& eq : s.equations()) {
    FiniteEquationCheck check;
    check.equation = eq.name;
    Expr pulled = liegen::pull_back(eq.expr, f, r);
    if (pulled.is_zero()) {
      throw SingularTransformationError("flow of '" + f.generator() + "' annihilates equation " +
                                        eq.name);
    }
    // lambda from the leading canonical term, then confirmed on every term.
    auto split = symcore::collect(
        pulled, [&](const Atom& a) { return !r.has_role(a, CoordinateRole::FlowParameter); });
    const auto& lead = eq.expr.terms().front();
    auto it = split.find(lead.monomial);
    if (it != split.end()) {
      Expr lambda = it->second.scaled(1 / lead.coefficient);
      if (liegen::reduce_exponentials(lambda * eq.expr, r) == pulled) {
        check.pass = true;
        check.lambda = lambda;
      }
    }
    out.equations.push_back(std::move(check));
  }
  return out;
}

// ------------------------------------------------------------------ verify

bool Verdict::zero() const {
  for (const auto& e : equations) {
    if (!e.zero) return false;
  }
  return true;
}

Verdict verify(const BalanceSystem& s, const GeneratorSpec& g, const FiniteTransformation* flow) {
  const auto& r = s.registry();
  for (const auto& [coordinate, value] : g.coefficients()) {
    for (const Atom& a : value.atoms()) {
      if (r.has_role(a, CoordinateRole::Unknown)) {
        throw Error("verify needs a concrete generator; '" + r.name(a) +
                    "' is an unknown constant (use deteq)");
      }
    }
  }
  auto ds = determining_equations(s, g);
  Verdict v;
  v.generator = g.name();
  for (const auto& split : ds.equations) {
    EquationVerdict ev;
    ev.equation = split.equation;
    ev.rho_power = split.rho_power;
    ev.condition_count = split.conditions.size();
    for (const auto& c : split.conditions) {
      if (!c.coefficient.is_zero()) {
        ev.zero = false;
        ev.witness = c;
        break;
      }
    }
    v.equations.push_back(std::move(ev));
  }
  if (flow != nullptr) {
    v.finite = finite_check(s, *flow);
    v.agreement = v.zero() == v.finite->pass();
  }
  return v;
}

std::vector<Verdict> verify_batch_serial(const BalanceSystem& s,
                                         const std::vector<VerifyJob>& jobs) {
  std::vector<Verdict> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs) {
    out.push_back(verify(s, job.generator, job.flow ? &*job.flow : nullptr));
  }
  return out;
}

std::vector<Verdict> verify_batch(const BalanceSystem& s, const std::vector<VerifyJob>& jobs) {
  std::vector<Verdict> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < count; ++k) {
    const auto& job = jobs[static_cast<std::size_t>(k)];
    try {
      out[static_cast<std::size_t>(k)] = verify(s, job.generator, job.flow ? &*job.flow : nullptr);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace nonpolar::deteq
