#include "nonpolar/liegen/flow.hpp"

#include <cctype>

#include "nonpolar/errors.hpp"

namespace nonpolar::liegen {

FlowParameter symbolic_parameter(const JetRegistry& r, int slot) {
  auto s = r.flow_symbols(slot);
  return {Expr::atom(s.a), Expr::atom(s.exp_pos), Expr::atom(s.exp_neg)};
}

Expr reduce_exponentials(const Expr& e, const JetRegistry& r) {
  std::vector<symcore::Term> terms;
  bool changed = false;
  for (const auto& t : e.terms()) {
    symcore::Monomial m = t.monomial;
    for (int slot = 0; slot < 2; ++slot) {
      auto s = r.flow_symbols(slot);
      int common = std::min(m.degree(s.exp_pos), m.degree(s.exp_neg));
      if (common > 0) {
        m = m.lowered(s.exp_pos, common).lowered(s.exp_neg, common);
        changed = true;
      }
    }
    terms.push_back({m, t.coefficient});
  }
  return changed ? Expr::from_terms(std::move(terms)) : e;
}

Expr pull_back(const Expr& e, const FiniteTransformation& f, const JetRegistry& r) {
  return reduce_exponentials(symcore::compose(e, f.images()), r);
}

namespace {

/// Index suffix of names like X2 / Y3, or -1.
int family_index(const std::string& name, char family, int dimension) {
  if (name.size() < 2 || name[0] != family) return -1;
  for (std::size_t k = 1; k < name.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(name[k]))) return -1;
  }
  int i = std::stoi(name.substr(1));
  return (i >= 1 && i <= dimension) ? i : -1;
}

/// Images of base coordinates and jets; identity where not listed.
std::map<Atom, Expr> point_and_jet_images(const std::string& name, const JetRegistry& r,
                                          const FlowParameter& a) {
  const int n = r.dimension();
  auto A = [](const Atom& x) { return Expr::atom(x); };
  std::map<Atom, Expr> m;
  auto scale = [&](const Atom& x, const Expr& factor) { m[x] = factor * A(x); };

  if (name == "X0") {
    m[r.t()] = A(r.t()) + a.a;
  } else if (int i = family_index(name, 'X', n); i > 0) {
    m[r.x(i)] = A(r.x(i)) + a.a;
  } else if (name == "S") {
    m[r.p()] = A(r.p()) + a.a;
  } else if (int g = family_index(name, 'Y', n); g > 0) {
    // x_g -> x_g + a t, u_g -> u_g + a; time derivatives pick up -a d/dx_g.
    m[r.x(g)] = A(r.x(g)) + a.a * A(r.t());
    m[r.u(g)] = A(r.u(g)) + a.a;
    for (int d = 0; d < n + 2; ++d) {
      Atom dt = *r.jet(d, {0});
      m[dt] = A(dt) - a.a * A(*r.jet(d, {g}));
    }
    for (int k = 1; k <= n; ++k) {
      for (int l = 1; l <= n; ++l) m[r.u_tx(k, l)] = A(r.u_tx(k, l)) - a.a * A(r.u_xx(k, g, l));
    }
  } else if (name == "T") {
    for (int k = 1; k <= n; ++k) m[r.pi(k, k)] = A(r.pi(k, k)) + a.a;
    m[r.G()] = A(r.G()) - a.a * A(r.H());
  } else if (name == "Z1") {
    const Expr e1 = a.exp_pos;
    const Expr e2 = a.exp_pos.pow(2);
    for (int i = 1; i <= n; ++i) {
      scale(r.x(i), e1);
      scale(r.u(i), e1);
      scale(r.u_t(i), e1);
      scale(r.p_x(i), e1);
      scale(r.rho_x(i), a.exp_neg);
      for (int l = 1; l <= n; ++l) {
        for (int j = l; j <= n; ++j) scale(r.u_xx(i, l, j), a.exp_neg);
      }
    }
    scale(r.p(), e2);
    scale(r.p_t(), e2);
    for (const Atom& pi : r.stress()) scale(pi, e2);
    scale(r.G(), e2);
  } else if (name == "Z2") {
    const Expr& e1 = a.exp_pos;
    scale(r.rho(), e1);
    scale(r.p(), e1);
    for (int w = 0; w <= n; ++w) {
      scale(*r.jet(n, {w}), e1);
      scale(*r.jet(n + 1, {w}), e1);
    }
    for (const Atom& pi : r.stress()) scale(pi, e1);
    scale(r.G(), e1);
  } else {
    throw NoClosedFormError("no closed-form flow for generator '" + name + "'");
  }

  std::vector<Atom> all = r.base_coordinates();
  all.insert(all.end(), r.first_jets().begin(), r.first_jets().end());
  all.insert(all.end(), r.second_jets().begin(), r.second_jets().end());
  for (const Atom& c : all) {
    if (!m.count(c)) m[c] = A(c);
  }
  return m;
}

}  // namespace

FiniteTransformation exponentiate(const std::string& name, const JetRegistry& r,
                                  const FlowParameter& parameter) {
  const int n = r.dimension();
  FiniteTransformation f;
  f.generator_ = name;
  f.parameter_ = parameter;
  f.images_ = point_and_jet_images(name, r, parameter);

  // Pi'(p') = F(Pi(p), p) with p = P^-1(p'):
  //   Pi'_kl = sum_ab Dt_ab(F) * d(P^-1)^ab/dp'^kl, evaluated at p' = P(p).
  const auto inverse = point_and_jet_images(name, r, -parameter);
  std::map<Atom, Expr> gradient_image;
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= n; ++l) gradient_image[r.u_x(k, l)] = f.images_.at(r.u_x(k, l));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const Expr& F = f.images_.at(r.pi(i, j));
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) {
          Expr value;
          for (int s = 1; s <= n; ++s) {
            for (int b = 1; b <= n; ++b) {
              Expr jac = symcore::diff_atom(inverse.at(r.u_x(s, b)), r.u_x(k, l));
              if (jac.is_zero()) continue;
              jac = symcore::compose(jac, gradient_image);
              value += element_total_derivative(F, s, b, r) * jac;
            }
          }
          f.images_[r.pi_d(i, j, k, l)] = reduce_exponentials(value, r);
        }
      }
    }
  }

  for (const auto& [coordinate, image] : f.images_) {
    if (image.is_zero()) {
      throw SingularTransformationError("flow of '" + name + "' maps '" + r.name(coordinate) +
                                        "' to zero");
    }
  }
  return f;
}

}  // namespace nonpolar::liegen
