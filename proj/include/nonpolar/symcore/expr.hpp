#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nonpolar::symcore {

using Rational = mpq_class;

std::string to_string(const Rational& q);

enum class AtomKind : std::uint8_t { Coordinate = 0, Function = 1, Derivative = 2 };

/// A symbol of the polynomial ring: a coordinate, an application of a
/// declared function symbol to its declared arguments, or a formal partial
/// derivative of such an application. Derivative arguments are kept as a
/// sorted multiset of coordinate ids, so mixed derivatives commute by
/// construction.
struct Atom {
  AtomKind kind = AtomKind::Coordinate;
  int id = 0;
  std::vector<int> wrt;

  static Atom coordinate(int id) { return {AtomKind::Coordinate, id, {}}; }
  static Atom function(int id) { return {AtomKind::Function, id, {}}; }
  static Atom derivative(int function_id, std::vector<int> wrt);

  bool is_coordinate() const { return kind == AtomKind::Coordinate; }
  /// Function application or formal derivative of one.
  bool is_function_like() const { return kind != AtomKind::Coordinate; }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom&, const Atom&) = default;
};

/// Power product of atoms with positive exponents, sorted by atom order.
class Monomial {
 public:
  using Factor = std::pair<Atom, int>;

  Monomial() = default;
  explicit Monomial(const Atom& a, int exponent = 1);
  /// Factors need not be sorted or merged; zero exponents are dropped.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree(const Atom& a) const;
  int total_degree() const;

  Monomial operator*(const Monomial& other) const;
  /// Drops atom `a` entirely.
  Monomial without(const Atom& a) const;
  /// Exponent of `a` lowered by `by` (which must not exceed the degree).
  Monomial lowered(const Atom& a, int by) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

struct Term {
  Monomial monomial;
  Rational coefficient;
};

/// Canonical polynomial over atoms with exact rational coefficients. Terms
/// are sorted by monomial, pairwise distinct, and never carry a zero
/// coefficient; the zero polynomial is the empty sum. Two expressions are
/// mathematically equal iff they are structurally equal.
class Expr {
 public:
  Expr() = default;
  Expr(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Expr(long constant) : Expr(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
  Expr(int constant) : Expr(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

  static Expr atom(const Atom& a);
  static Expr monomial(const Monomial& m, const Rational& coefficient = 1);
  /// Sorts, merges, and drops zero coefficients.
  static Expr from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero when absent).
  Rational constant_value() const;

  std::set<Atom> atoms() const;
  bool contains(const Atom& a) const;
  int degree(const Atom& a) const;

  Expr operator-() const;
  Expr operator+(const Expr& other) const;
  Expr operator-(const Expr& other) const;
  Expr operator*(const Expr& other) const;
  Expr& operator+=(const Expr& other) { return *this = *this + other; }
  Expr& operator-=(const Expr& other) { return *this = *this - other; }
  Expr& operator*=(const Expr& other) { return *this = *this * other; }
  Expr scaled(const Rational& factor) const;
  Expr pow(unsigned exponent) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::vector<Term> terms_;
};

bool is_zero(const Expr& e);

/// Partial derivative treating `a` as an independent variable; no chain
/// rule through function atoms.
Expr diff_atom(const Expr& e, const Atom& a);

/// Simultaneous replacement of atoms, then normalization. Keys may occur in
/// the replacement values (change of variables).
Expr compose(const Expr& e, const std::map<Atom, Expr>& bindings);

/// Single-pass substitution. Throws CyclicSubstitutionError when a key
/// occurs in any binding value.
Expr substitute(const Expr& e, const std::map<Atom, Expr>& bindings);

/// Splits `e` by monomials in the parametric atoms. Summing key * value over
/// the result gives back `e`; no value contains a parametric atom.
std::map<Monomial, Expr> collect(const Expr& e, const std::set<Atom>& parametric);
std::map<Monomial, Expr> collect(const Expr& e,
                                 const std::function<bool(const Atom&)>& is_parametric);

/// Sums key * value; inverse of collect.
Expr recombine(const std::map<Monomial, Expr>& split);

Rational evaluate(const Expr& e, const std::map<Atom, Rational>& point);
double evaluate(const Expr& e, const std::map<Atom, double>& point);

}  // namespace nonpolar::symcore
