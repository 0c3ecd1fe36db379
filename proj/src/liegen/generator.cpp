#include "nonpolar/liegen/generator.hpp"

#include <algorithm>

#include "nonpolar/errors.hpp"

namespace nonpolar::liegen {

using jetspace::CoordinateRole;

Expr GeneratorSpec::coefficient(const Atom& coordinate) const {
  auto it = coefficients_.find(coordinate);
  return it == coefficients_.end() ? Expr() : it->second;
}

void GeneratorSpec::add(const Atom& coordinate, const Expr& value) {
  Expr sum = coefficient(coordinate) + value;
  if (sum.is_zero()) {
    coefficients_.erase(coordinate);
  } else {
    coefficients_[coordinate] = std::move(sum);
  }
}

GeneratorSpec GeneratorSpec::operator+(const GeneratorSpec& other) const {
  GeneratorSpec out = *this;
  for (const auto& [c, v] : other.coefficients_) out.add(c, v);
  return out;
}

GeneratorSpec GeneratorSpec::operator-(const GeneratorSpec& other) const {
  return *this + other.scaled(Expr(-1));
}

GeneratorSpec GeneratorSpec::scaled(const Expr& factor) const {
  GeneratorSpec out(name_);
  for (const auto& [c, v] : coefficients_) out.add(c, v * factor);
  return out;
}

// ------------------------------------------------------------------ ansatz

namespace {

enum class Family { Point, Stress, Element };

std::optional<Family> family_of(const Atom& c, const JetRegistry& r) {
  if (r.has_role(c, CoordinateRole::Independent) || r.has_role(c, CoordinateRole::Dependent)) {
    return Family::Point;
  }
  if (c.kind == symcore::AtomKind::Function) {
    if (c == r.G() || c == r.H()) return Family::Element;
    return Family::Stress;
  }
  return std::nullopt;
}

bool allowed(Family family, const Atom& a, const JetRegistry& r) {
  if (r.has_role(a, CoordinateRole::Unknown)) return true;
  switch (family) {
    case Family::Point:
      return r.has_role(a, CoordinateRole::Independent) || r.has_role(a, CoordinateRole::Dependent);
    case Family::Stress:
      if (r.jet_order(a) == 1) {
        const auto& info = r.info(a);
        return info.index < r.dimension() && info.order.front() != 0;
      }
      return a.kind == symcore::AtomKind::Function && !(a == r.G()) && !(a == r.H());
    case Family::Element:
      return a == r.p() || a == r.rho() || a == r.G() || a == r.H();
  }
  return false;
}

const char* family_label(Family f) {
  switch (f) {
    case Family::Point:
      return "xi/eta";
    case Family::Stress:
      return "mu^Pi";
    case Family::Element:
      return "mu^G/mu^H";
  }
  return "";
}

}  // namespace

void check_ansatz(const GeneratorSpec& g, const JetRegistry& r) {
  for (const auto& [coordinate, value] : g.coefficients()) {
    auto family = family_of(coordinate, r);
    if (!family) {
      throw AnsatzError(r.name(coordinate), "generator may not act on '" + r.name(coordinate) +
                                                "' directly; only t, x, u, p, rho, Pi, G, H");
    }
    for (const Atom& a : value.atoms()) {
      if (!allowed(*family, a, r)) {
        throw AnsatzError(r.name(a), std::string("ansatz violation: ") + family_label(*family) +
                                         " coefficient of d/d" + r.name(coordinate) +
                                         " depends on '" + r.name(a) + "'");
      }
    }
  }
}

std::vector<std::pair<std::string, std::string>> ansatz_description() {
  return {
      {"xi_eta", "xi^t, xi^x, eta^u, eta^p, eta^rho depend on (t, x, u, p, rho)"},
      {"mu_Pi", "mu^Pi depends on (grad u, Pi)"},
      {"mu_G_H", "mu^G, mu^H depend on (p, rho, G, H)"},
      {"mu_Pi_derivatives", "Pi^ij_kl transforms by the prolongation over the (grad u, Pi) space"},
  };
}

// --------------------------------------------------------------- action

Expr act(const GeneratorSpec& g, const Expr& f) {
  Expr out;
  for (const auto& [coordinate, value] : g.coefficients()) {
    Expr d = symcore::diff_atom(f, coordinate);
    if (!d.is_zero()) out += value * d;
  }
  return out;
}

GeneratorSpec bracket(const GeneratorSpec& g1, const GeneratorSpec& g2, const JetRegistry& r) {
  GeneratorSpec out;
  for (const Atom& c : r.base_coordinates()) {
    out.add(c, act(g1, g2.coefficient(c)) - act(g2, g1.coefficient(c)));
  }
  return out;
}

// ----------------------------------------------------------- prolongation

Expr ProlongedGenerator::coefficient(const Atom& coordinate) const {
  auto it = coefficients_.find(coordinate);
  if (it == coefficients_.end()) return {};
  if (!it->second) {
    throw JetOrderError("prolongation coefficient of '" + registry_->name(coordinate) +
                        "' needs jets outside the registered space");
  }
  return *it->second;
}

Expr element_total_derivative(const Expr& e, int k, int l, const JetRegistry& r) {
  Expr out = symcore::diff_atom(e, r.u_x(k, l));
  for (const Atom& pi : r.stress()) {
    Expr d = symcore::diff_atom(e, pi);
    if (!d.is_zero()) out += Expr::atom(*r.symbols().derivative(pi, r.u_x(k, l).id)) * d;
  }
  return out;
}

ProlongedGenerator prolong(const GeneratorSpec& g, const JetRegistry& r) {
  check_ansatz(g, r);
  const int n = r.dimension();
  ProlongedGenerator pg;
  pg.base_ = g;
  pg.registry_ = &r;
  for (const Atom& c : r.base_coordinates()) pg.coefficients_[c] = g.coefficient(c);

  std::vector<Expr> xi;
  for (int v = 0; v <= n; ++v) xi.push_back(g.coefficient(r.independent(v)));
  // dxi[w][v] = D_w(xi^v)
  std::vector<std::vector<Expr>> dxi(static_cast<std::size_t>(n + 1));
  for (int w = 0; w <= n; ++w) {
    for (int v = 0; v <= n; ++v) {
      dxi[static_cast<std::size_t>(w)].push_back(
          jetspace::total_derivative(xi[static_cast<std::size_t>(v)], w, r));
    }
  }

  auto jet_expr = [&](int d, std::vector<int> ws) {
    auto j = r.jet(d, std::move(ws));
    if (!j) throw JetOrderError("prolongation needs an unregistered jet");
    return Expr::atom(*j);
  };

  std::map<std::pair<int, int>, Expr> first;  // (dependent, w) -> zeta
  for (const Atom& jet : r.first_jets()) {
    const auto& info = r.info(jet);
    const int d = info.index;
    const int w = info.order.front();
    Expr zeta = jetspace::total_derivative(g.coefficient(r.dependent(d)), w, r);
    for (int v = 0; v <= n; ++v) {
      const Expr& c = dxi[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)];
      if (!c.is_zero()) zeta -= c * jet_expr(d, {v});
    }
    first[{d, w}] = zeta;
    pg.coefficients_[jet] = zeta;
  }

  for (const Atom& jet : r.second_jets()) {
    const auto& info = r.info(jet);
    const int d = info.index;
    const int w = info.order[0];
    const int v = info.order[1];
    try {
      Expr zeta = jetspace::total_derivative(first.at({d, w}), v, r);
      for (int z = 0; z <= n; ++z) {
        const Expr& c = dxi[static_cast<std::size_t>(v)][static_cast<std::size_t>(z)];
        if (!c.is_zero()) zeta -= c * jet_expr(d, {w, z});
      }
      pg.coefficients_[jet] = zeta;
    } catch (const JetOrderError&) {
      pg.coefficients_[jet] = std::nullopt;
    }
  }

  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const Expr mu = g.coefficient(r.pi(i, j));
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) {
          Expr value = element_total_derivative(mu, k, l, r);
          for (int rr = 1; rr <= n; ++rr) {
            for (int s = 1; s <= n; ++s) {
              Expr dz = element_total_derivative(first.at({rr - 1, s}), k, l, r);
              if (!dz.is_zero()) value -= Expr::atom(r.pi_d(i, j, rr, s)) * dz;
            }
          }
          pg.coefficients_[r.pi_d(i, j, k, l)] = value;
        }
      }
    }
  }
  return pg;
}

std::vector<Contribution> apply_traced(const ProlongedGenerator& pg, const Expr& e) {
  std::vector<Contribution> out;
  for (const Atom& a : e.atoms()) {
    auto it = pg.coefficients().find(a);
    if (it == pg.coefficients().end()) {
      if (a.is_coordinate()) continue;  // unknown constants and flow symbols
      const std::string name = pg.registry().name(a);
      throw UnknownSymbolError(name, "generator has no prolongation coefficient for '" + name + "'");
    }
    Expr c = pg.coefficient(a);
    if (c.is_zero()) continue;
    out.push_back({a, c * symcore::diff_atom(e, a)});
  }
  return out;
}

Expr apply(const ProlongedGenerator& pg, const Expr& e) {
  Expr out;
  for (const auto& c : apply_traced(pg, e)) out += c.term;
  return out;
}

}  // namespace nonpolar::liegen
