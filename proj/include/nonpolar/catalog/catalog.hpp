#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nonpolar/liegen/flow.hpp"
#include "nonpolar/liegen/generator.hpp"

namespace nonpolar::catalog {

using jetspace::JetRegistry;
using liegen::GeneratorSpec;
using symcore::Rational;

enum class Provenance { Theorem, RotationCandidate };

struct CatalogEntry {
  std::string name;
  GeneratorSpec generator;
  Provenance provenance = Provenance::Theorem;
  bool has_flow = false;  // exponentiate() has a closed form
};

/// Theorem generators X0, X1..XN, S, Y1..YN, T, Z1, Z2 (2N + 5 entries),
/// followed for N >= 2 by the rotation candidates Jij_naive and
/// Jij_tensorial (i < j).
std::vector<CatalogEntry> build_catalog(int dimension, const JetRegistry& r);

std::vector<CatalogEntry> theorem_entries(const std::vector<CatalogEntry>& entries);
const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const std::string& name);

/// Rotation in the (x_i, x_j) plane: xi^{x_i} = -x_j, xi^{x_j} = x_i, same
/// for u. The tensorial variant also turns Pi by dPi = Omega Pi - Pi Omega.
GeneratorSpec rotation(int i, int j, bool tensorial, const JetRegistry& r);

/// Bracket expressed in a basis: coefficients[k] multiplies basis[k].
struct Combination {
  std::vector<Rational> coefficients;
  bool is_zero() const;
};

struct StructureTable {
  std::vector<std::string> names;
  /// cells[a][b] = [basis_a, basis_b]; nullopt when it leaves the span.
  std::vector<std::vector<std::optional<Combination>>> cells;

  bool closed() const;
  bool antisymmetric() const;
};

/// Expresses a generator as a rational combination of `basis`, or nullopt.
std::optional<Combination> decompose(const GeneratorSpec& g, const std::vector<CatalogEntry>& basis,
                                     const JetRegistry& r);

StructureTable structure_constants(const std::vector<CatalogEntry>& basis, const JetRegistry& r);

/// "X1", "2*S", "-Y1", "X1 + 1/2*Z2", "0".
std::string format_combination(const Combination& c, const std::vector<std::string>& names);

}  // namespace nonpolar::catalog
