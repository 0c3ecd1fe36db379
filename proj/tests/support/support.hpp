#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nonpolar/catalog/catalog.hpp"
#include "nonpolar/jetspace/registry.hpp"
#include "nonpolar/liegen/generator.hpp"

namespace nonpolar::testing {

using jetspace::JetRegistry;
using symcore::Atom;
using symcore::Expr;
using symcore::Rational;

/// Coordinates, jets, Pi, Pi_kl, G, H (no unknowns, no flow symbols).
std::vector<Atom> space_atoms(const JetRegistry& r);

std::map<Atom, double> random_point(const std::vector<Atom>& atoms, std::mt19937& rng,
                                    double lo = 0.5, double hi = 2.0);

/// Nonzero rationals with small numerators and denominators.
Rational random_rational(std::mt19937& rng, int span = 9);
std::map<Atom, Rational> random_rational_point(const std::vector<Atom>& atoms, std::mt19937& rng);

/// Coefficient of the prolonged generator, nullopt when unavailable.
std::optional<Expr> prolonged_coefficient(const liegen::ProlongedGenerator& pg, const Atom& a);

/// Independent numeric model of the rotation flow in the (x_i, x_j) plane:
/// R = exp(a Omega), x -> R x, u -> R u, grad u -> R grad u R^T, second
/// jets rotated in every index. Pi -> R Pi R^T when tensorial, fixed
/// otherwise; Pi_kl follows from the chain rule.
std::map<Atom, double> rotation_image(const JetRegistry& r, int i, int j, bool tensorial,
                                      const std::map<Atom, double>& point, double a);

struct FdResult {
  double max_error = 0.0;
  std::size_t compared = 0;
  std::string worst;
};

/// Central difference in a at a = 0 of the entry's flow against the
/// prolonged coefficients, at `points` random points. Error is
/// |fd - sym| / max(1, |sym|).
FdResult fd_prolongation_check(const catalog::CatalogEntry& entry, const JetRegistry& r,
                               std::mt19937& rng, int points = 10, double h = 1e-5);

/// Relabels spatial axes by sigma (1-based, sigma[0] unused).
std::map<Atom, Expr> permute_axes(const JetRegistry& r, const std::vector<int>& sigma);

}  // namespace nonpolar::testing
