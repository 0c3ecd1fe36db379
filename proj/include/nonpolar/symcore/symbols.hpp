#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nonpolar/symcore/expr.hpp"

namespace nonpolar::symcore {

/// How formal-derivative atoms of a function symbol are spelled.
///   Concatenated: G_p, G_prho, G_pp
///   Marked:       Pi12_d_u1x2, Pi12_d_u1x1_d_u2x2
/// In both styles an argument is spelled by its coordinate name with the
/// underscores removed.
enum class DerivativeNaming { Concatenated, Marked };

struct FunctionSymbol {
  std::string name;
  std::vector<int> arguments;  // coordinate ids
  DerivativeNaming naming = DerivativeNaming::Concatenated;
};

/// Names and signatures for atoms. Immutable once the owner has finished
/// registering; all const members are safe to call concurrently.
class SymbolTable {
 public:
  int add_coordinate(const std::string& name);
  int add_function(const std::string& name, std::vector<int> arguments, DerivativeNaming naming);
  /// Extra spelling that resolves to an existing atom.
  void add_alias(const std::string& name, const Atom& atom);

  std::size_t coordinate_count() const { return coordinates_.size(); }
  std::size_t function_count() const { return functions_.size(); }
  const std::string& coordinate_name(int id) const;
  const FunctionSymbol& function(int id) const;
  bool is_argument(int function_id, int coordinate) const;

  std::string name(const Atom& a) const;
  std::optional<Atom> lookup(std::string_view name) const;
  Atom require(std::string_view name) const;

  /// Formal derivative of a function-like atom by one of its arguments.
  /// Returns nullopt when `coordinate` is not a declared argument.
  std::optional<Atom> derivative(const Atom& base, int coordinate) const;

 private:
  std::optional<Atom> lookup_derivative(std::string_view name) const;

  std::vector<std::string> coordinates_;
  std::vector<FunctionSymbol> functions_;
  std::unordered_map<std::string, Atom> by_name_;
};

/// ∂e/∂v for a declared coordinate v, with the chain rule through
/// function atoms: f(args) differentiates to the formal derivative f_v when
/// v is an argument and to zero otherwise.
Expr diff_partial(const Expr& e, int coordinate, const SymbolTable& table);

/// Stable text form. parse_expr(to_text(e)) == e.
std::string to_text(const Expr& e, const SymbolTable& table);
std::string to_text(const Monomial& m, const SymbolTable& table);

/// Raw, unnormalized expression tree.
class RawExpr {
 public:
  enum class Kind { Number, Symbol, Basis, Sum, Product, Quotient, Power };

  static RawExpr number(Rational value);
  static RawExpr symbol(Atom atom);
  /// Vector-field basis element d/d<atom>; only meaningful in linear forms.
  static RawExpr basis(Atom atom);
  static RawExpr sum(std::vector<RawExpr> children);
  static RawExpr product(std::vector<RawExpr> children);
  static RawExpr quotient(RawExpr numerator, RawExpr denominator);
  static RawExpr power(RawExpr base, Rational exponent);
  static RawExpr negate(RawExpr e);

  Kind kind() const { return kind_; }
  const Rational& value() const { return value_; }
  const Atom& atom() const { return atom_; }
  const std::vector<RawExpr>& children() const { return children_; }

 private:
  Kind kind_ = Kind::Number;
  Rational value_;
  Atom atom_;
  std::vector<RawExpr> children_;
};

/// Canonical form of a raw tree. Throws UnsupportedFormError for negative or
/// non-integer exponents, division by a non-constant, and basis elements.
Expr normalize(const RawExpr& raw);

/// A linear combination of basis elements d/d<atom> with Expr coefficients,
/// plus a scalar part.
struct LinearForm {
  Expr scalar;
  std::map<Atom, Expr> basis;
};

/// Canonical linear form of a raw tree; products of two basis-carrying
/// factors and powers of basis elements are rejected.
LinearForm normalize_linear(const RawExpr& raw);

/// Parses the arithmetic text form (sums, products, rational literals,
/// non-negative integer powers, parentheses). With allow_basis, `d/dNAME`
/// tokens are accepted as basis elements. Errors carry line and column.
/// `first_line`/`first_column` locate the text inside a larger document.
RawExpr parse_raw(std::string_view text, const SymbolTable& table, bool allow_basis = false,
                  int first_line = 1, int first_column = 1);

Expr parse_expr(std::string_view text, const SymbolTable& table);

}  // namespace nonpolar::symcore
