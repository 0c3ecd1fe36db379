#include "nonpolar/catalog/catalog.hpp"

#include "nonpolar/errors.hpp"
#include "nonpolar/symcore/linear.hpp"

namespace nonpolar::catalog {

using symcore::Atom;
using symcore::Expr;

namespace {

Expr A(const Atom& a) { return Expr::atom(a); }

CatalogEntry theorem(std::string name, GeneratorSpec g) {
  g.set_name(name);
  return {std::move(name), std::move(g), Provenance::Theorem, true};
}

}  // namespace

GeneratorSpec rotation(int i, int j, bool tensorial, const JetRegistry& r) {
  const int n = r.dimension();
  GeneratorSpec g("J" + std::to_string(i) + std::to_string(j) + (tensorial ? "_tensorial" : "_naive"));
  g.add(r.x(i), -A(r.x(j)));
  g.add(r.x(j), A(r.x(i)));
  g.add(r.u(i), -A(r.u(j)));
  g.add(r.u(j), A(r.u(i)));
  if (tensorial) {
    // Omega e_j = e_i scaled by -1, Omega e_i = e_j: Omega(i,j) = -1, Omega(j,i) = 1.
    auto omega = [&](int a, int b) -> int {
      if (a == i && b == j) return -1;
      if (a == j && b == i) return 1;
      return 0;
    };
    for (int a = 1; a <= n; ++a) {
      for (int b = a; b <= n; ++b) {
        Expr mu;
        for (int k = 1; k <= n; ++k) {
          if (omega(a, k) != 0) mu += A(r.pi(k, b)).scaled(omega(a, k));
          if (omega(k, b) != 0) mu -= A(r.pi(a, k)).scaled(omega(k, b));
        }
        g.add(r.pi(a, b), mu);
      }
    }
  }
  return g;
}

std::vector<CatalogEntry> build_catalog(int dimension, const JetRegistry& r) {
  if (dimension < 1 || dimension > 3) {
    throw UnsupportedDimensionError("unsupported dimension " + std::to_string(dimension));
  }
  if (r.dimension() != dimension) throw DimensionMismatchError("catalog/registry dimension mismatch");
  const int n = dimension;
  std::vector<CatalogEntry> out;

  GeneratorSpec x0;
  x0.add(r.t(), Expr(1));
  out.push_back(theorem("X0", x0));
  for (int i = 1; i <= n; ++i) {
    GeneratorSpec xi;
    xi.add(r.x(i), Expr(1));
    out.push_back(theorem("X" + std::to_string(i), xi));
  }
  GeneratorSpec s;
  s.add(r.p(), Expr(1));
  out.push_back(theorem("S", s));
  for (int i = 1; i <= n; ++i) {
    GeneratorSpec yi;
    yi.add(r.x(i), A(r.t()));
    yi.add(r.u(i), Expr(1));
    out.push_back(theorem("Y" + std::to_string(i), yi));
  }
  GeneratorSpec t;
  for (int k = 1; k <= n; ++k) t.add(r.pi(k, k), Expr(1));
  t.add(r.G(), -A(r.H()));
  out.push_back(theorem("T", t));

  GeneratorSpec z1;
  for (int i = 1; i <= n; ++i) {
    z1.add(r.x(i), A(r.x(i)));
    z1.add(r.u(i), A(r.u(i)));
  }
  z1.add(r.p(), A(r.p()).scaled(2));
  for (const Atom& pi : r.stress()) z1.add(pi, A(pi).scaled(2));
  z1.add(r.G(), A(r.G()).scaled(2));
  out.push_back(theorem("Z1", z1));

  GeneratorSpec z2;
  z2.add(r.rho(), A(r.rho()));
  z2.add(r.p(), A(r.p()));
  for (const Atom& pi : r.stress()) z2.add(pi, A(pi));
  z2.add(r.G(), A(r.G()));
  out.push_back(theorem("Z2", z2));

  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (bool tensorial : {false, true}) {
        GeneratorSpec g = rotation(i, j, tensorial, r);
        out.push_back({g.name(), g, Provenance::RotationCandidate, false});
      }
    }
  }
  return out;
}

std::vector<CatalogEntry> theorem_entries(const std::vector<CatalogEntry>& entries) {
  std::vector<CatalogEntry> out;
  for (const auto& e : entries) {
    if (e.provenance == Provenance::Theorem) out.push_back(e);
  }
  return out;
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const std::string& name) {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

// ------------------------------------------------------ structure constants

bool Combination::is_zero() const {
  for (const auto& c : coefficients) {
    if (c != 0) return false;
  }
  return true;
}

std::optional<Combination> decompose(const GeneratorSpec& g, const std::vector<CatalogEntry>& basis,
                                     const JetRegistry& r) {
  // Placeholder atoms for the unknown coefficients; ids past the registry.
  const int offset = static_cast<int>(r.symbols().coordinate_count());
  std::vector<Atom> unknowns;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    unknowns.push_back(Atom::coordinate(offset + static_cast<int>(k)));
  }
  std::vector<Expr> conditions;
  for (const Atom& c : r.base_coordinates()) {
    Expr residual = -g.coefficient(c);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      residual += Expr::atom(unknowns[k]) * basis[k].generator.coefficient(c);
    }
    auto more = symcore::linear_conditions(residual, unknowns);
    conditions.insert(conditions.end(), more.begin(), more.end());
  }
  auto solution = symcore::solve_linear(conditions, unknowns);
  if (!solution) return std::nullopt;
  Combination out;
  for (const Atom& u : unknowns) {
    auto it = solution->find(u);
    // Free unknowns (dependent basis) are set to zero.
    out.coefficients.push_back(it == solution->end() ? Rational(0) : it->second.constant_value());
  }
  return out;
}

bool StructureTable::closed() const {
  for (const auto& row : cells) {
    for (const auto& cell : row) {
      if (!cell) return false;
    }
  }
  return true;
}

bool StructureTable::antisymmetric() const {
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = 0; b < cells.size(); ++b) {
      const auto& ab = cells[a][b];
      const auto& ba = cells[b][a];
      if (!ab || !ba) return false;
      for (std::size_t k = 0; k < ab->coefficients.size(); ++k) {
        if (ab->coefficients[k] != -ba->coefficients[k]) return false;
      }
    }
  }
  return true;
}

StructureTable structure_constants(const std::vector<CatalogEntry>& basis, const JetRegistry& r) {
  StructureTable table;
  for (const auto& e : basis) table.names.push_back(e.name);
  table.cells.resize(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      auto br = liegen::bracket(basis[a].generator, basis[b].generator, r);
      table.cells[a].push_back(decompose(br, basis, r));
    }
  }
  return table;
}

std::string format_combination(const Combination& c, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < c.coefficients.size(); ++k) {
    const Rational& q = c.coefficients[k];
    if (q == 0) continue;
    Rational magnitude = abs(q);
    if (out.empty()) {
      if (q < 0) out += "-";
    } else {
      out += q < 0 ? " - " : " + ";
    }
    if (magnitude != 1) out += symcore::to_string(magnitude) + "*";
    out += names[k];
  }
  return out.empty() ? "0" : out;
}

}  // namespace nonpolar::catalog
