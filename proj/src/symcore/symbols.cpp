#include "nonpolar/symcore/symbols.hpp"

#include <algorithm>
#include <cctype>

#include "nonpolar/errors.hpp"

namespace nonpolar::symcore {

namespace {

std::string argument_token(const std::string& coordinate_name) {
  std::string out;
  for (char c : coordinate_name) {
    if (c != '_') out.push_back(c);
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------- SymbolTable

int SymbolTable::add_coordinate(const std::string& name) {
  if (by_name_.count(name) != 0) throw Error("duplicate symbol '" + name + "'");
  int id = static_cast<int>(coordinates_.size());
  coordinates_.push_back(name);
  by_name_.emplace(name, Atom::coordinate(id));
  return id;
}

int SymbolTable::add_function(const std::string& name, std::vector<int> arguments,
                              DerivativeNaming naming) {
  if (by_name_.count(name) != 0) throw Error("duplicate symbol '" + name + "'");
  std::sort(arguments.begin(), arguments.end());
  int id = static_cast<int>(functions_.size());
  functions_.push_back({name, std::move(arguments), naming});
  by_name_.emplace(name, Atom::function(id));
  return id;
}

void SymbolTable::add_alias(const std::string& name, const Atom& atom) {
  if (by_name_.count(name) != 0) throw Error("duplicate symbol '" + name + "'");
  by_name_.emplace(name, atom);
}

const std::string& SymbolTable::coordinate_name(int id) const {
  return coordinates_.at(static_cast<std::size_t>(id));
}

const FunctionSymbol& SymbolTable::function(int id) const {
  return functions_.at(static_cast<std::size_t>(id));
}

bool SymbolTable::is_argument(int function_id, int coordinate) const {
  const auto& args = function(function_id).arguments;
  return std::binary_search(args.begin(), args.end(), coordinate);
}

std::string SymbolTable::name(const Atom& a) const {
  switch (a.kind) {
    case AtomKind::Coordinate:
      return coordinate_name(a.id);
    case AtomKind::Function:
      return function(a.id).name;
    case AtomKind::Derivative: {
      const auto& fn = function(a.id);
      std::string out = fn.name;
      if (fn.naming == DerivativeNaming::Concatenated) {
        out += "_";
        for (int v : a.wrt) out += argument_token(coordinate_name(v));
      } else {
        for (int v : a.wrt) out += "_d_" + argument_token(coordinate_name(v));
      }
      return out;
    }
  }
  return {};
}

std::optional<Atom> SymbolTable::lookup(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it != by_name_.end()) return it->second;
  return lookup_derivative(name);
}

Atom SymbolTable::require(std::string_view name) const {
  auto a = lookup(name);
  if (!a) throw UnknownSymbolError(std::string(name));
  return *a;
}

std::optional<Atom> SymbolTable::lookup_derivative(std::string_view name) const {
  // The base may be spelled by any of its names, aliases included.
  for (std::size_t cut = name.find('_'); cut != std::string_view::npos; cut = name.find('_', cut + 1)) {
    auto base = by_name_.find(std::string(name.substr(0, cut)));
    if (base == by_name_.end() || base->second.kind != AtomKind::Function) continue;
    const auto f = static_cast<std::size_t>(base->second.id);
    const auto& fn = functions_[f];
    std::string_view rest = name.substr(cut + 1);
    std::vector<int> wrt;
    auto match_token = [&](std::string_view token) -> std::optional<int> {
      for (int arg : fn.arguments) {
        if (argument_token(coordinate_name(arg)) == token) return arg;
      }
      return std::nullopt;
    };
    if (fn.naming == DerivativeNaming::Marked) {
      if (rest.substr(0, 2) != "d_") continue;
      rest.remove_prefix(2);
      bool ok = true;
      while (ok) {
        auto cut = rest.find("_d_");
        auto token = rest.substr(0, cut);
        auto arg = match_token(token);
        if (!arg) {
          ok = false;
          break;
        }
        wrt.push_back(*arg);
        if (cut == std::string_view::npos) break;
        rest.remove_prefix(cut + 3);
      }
      if (!ok) continue;
    } else {
      bool ok = true;
      while (!rest.empty()) {
        std::size_t best = 0;
        int best_arg = -1;
        for (int arg : fn.arguments) {
          auto token = argument_token(coordinate_name(arg));
          if (token.size() > best && rest.substr(0, token.size()) == token) {
            best = token.size();
            best_arg = arg;
          }
        }
        if (best_arg < 0) {
          ok = false;
          break;
        }
        wrt.push_back(best_arg);
        rest.remove_prefix(best);
      }
      if (!ok || wrt.empty()) continue;
    }
    return Atom::derivative(static_cast<int>(f), std::move(wrt));
  }
  return std::nullopt;
}

std::optional<Atom> SymbolTable::derivative(const Atom& base, int coordinate) const {
  if (base.is_coordinate() || !is_argument(base.id, coordinate)) return std::nullopt;
  std::vector<int> wrt = base.wrt;
  wrt.push_back(coordinate);
  return Atom::derivative(base.id, std::move(wrt));
}

// ------------------------------------------------------------ diff_partial

Expr diff_partial(const Expr& e, int coordinate, const SymbolTable& table) {
  if (coordinate < 0 || static_cast<std::size_t>(coordinate) >= table.coordinate_count()) {
    throw UnknownSymbolError("#" + std::to_string(coordinate),
                             "unknown coordinate id " + std::to_string(coordinate));
  }
  Expr out;
  for (const Atom& a : e.atoms()) {
    if (a.is_coordinate()) {
      if (a.id == coordinate) out += diff_atom(e, a);
    } else if (auto d = table.derivative(a, coordinate)) {
      out += diff_atom(e, a) * Expr::atom(*d);
    }
  }
  return out;
}

// ------------------------------------------------------------------- text

std::string to_text(const Monomial& m, const SymbolTable& table) {
  std::string out;
  for (const auto& [atom, exponent] : m.factors()) {
    if (!out.empty()) out += "*";
    out += table.name(atom);
    if (exponent > 1) out += "^" + std::to_string(exponent);
  }
  return out.empty() ? "1" : out;
}

std::string to_text(const Expr& e, const SymbolTable& table) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    bool negative = t.coefficient < 0;
    Rational magnitude = abs(t.coefficient);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.monomial.is_one()) {
      out += to_string(magnitude);
    } else if (magnitude == 1) {
      out += to_text(t.monomial, table);
    } else {
      out += to_string(magnitude) + "*" + to_text(t.monomial, table);
    }
  }
  return out;
}

// ----------------------------------------------------------------- RawExpr

RawExpr RawExpr::number(Rational value) {
  RawExpr r;
  r.kind_ = Kind::Number;
  r.value_ = std::move(value);
  r.value_.canonicalize();
  return r;
}

RawExpr RawExpr::symbol(Atom atom) {
  RawExpr r;
  r.kind_ = Kind::Symbol;
  r.atom_ = std::move(atom);
  return r;
}

RawExpr RawExpr::basis(Atom atom) {
  RawExpr r;
  r.kind_ = Kind::Basis;
  r.atom_ = std::move(atom);
  return r;
}

RawExpr RawExpr::sum(std::vector<RawExpr> children) {
  RawExpr r;
  r.kind_ = Kind::Sum;
  r.children_ = std::move(children);
  return r;
}

RawExpr RawExpr::product(std::vector<RawExpr> children) {
  RawExpr r;
  r.kind_ = Kind::Product;
  r.children_ = std::move(children);
  return r;
}

RawExpr RawExpr::quotient(RawExpr numerator, RawExpr denominator) {
  RawExpr r;
  r.kind_ = Kind::Quotient;
  r.children_.push_back(std::move(numerator));
  r.children_.push_back(std::move(denominator));
  return r;
}

RawExpr RawExpr::power(RawExpr base, Rational exponent) {
  RawExpr r;
  r.kind_ = Kind::Power;
  r.value_ = std::move(exponent);
  r.value_.canonicalize();
  r.children_.push_back(std::move(base));
  return r;
}

RawExpr RawExpr::negate(RawExpr e) {
  return product({number(-1), std::move(e)});
}

namespace {

unsigned checked_exponent(const Rational& exponent) {
  if (exponent.get_den() != 1 || exponent < 0) {
    throw UnsupportedFormError("exponent " + to_string(exponent) +
                               " is not a non-negative integer");
  }
  if (exponent > 1000) throw UnsupportedFormError("exponent " + to_string(exponent) + " too large");
  return static_cast<unsigned>(exponent.get_num().get_ui());
}

LinearForm add(LinearForm a, const LinearForm& b) {
  a.scalar += b.scalar;
  for (const auto& [atom, coefficient] : b.basis) {
    Expr sum = a.basis[atom] + coefficient;
    if (sum.is_zero()) {
      a.basis.erase(atom);
    } else {
      a.basis[atom] = std::move(sum);
    }
  }
  return a;
}

LinearForm times_scalar(const LinearForm& a, const Expr& s) {
  LinearForm out;
  out.scalar = a.scalar * s;
  for (const auto& [atom, coefficient] : a.basis) {
    Expr c = coefficient * s;
    if (!c.is_zero()) out.basis.emplace(atom, std::move(c));
  }
  return out;
}

LinearForm multiply(const LinearForm& a, const LinearForm& b) {
  if (!a.basis.empty() && !b.basis.empty()) {
    throw UnsupportedFormError("product of two vector-field terms");
  }
  return a.basis.empty() ? times_scalar(b, a.scalar) : times_scalar(a, b.scalar);
}

}  // namespace

LinearForm normalize_linear(const RawExpr& raw) {
  switch (raw.kind()) {
    case RawExpr::Kind::Number:
      return {Expr(raw.value()), {}};
    case RawExpr::Kind::Symbol:
      return {Expr::atom(raw.atom()), {}};
    case RawExpr::Kind::Basis:
      return {Expr(), {{raw.atom(), Expr(1)}}};
    case RawExpr::Kind::Sum: {
      LinearForm out;
      for (const auto& c : raw.children()) out = add(std::move(out), normalize_linear(c));
      return out;
    }
    case RawExpr::Kind::Product: {
      LinearForm out{Expr(1), {}};
      for (const auto& c : raw.children()) out = multiply(out, normalize_linear(c));
      return out;
    }
    case RawExpr::Kind::Quotient: {
      LinearForm den = normalize_linear(raw.children()[1]);
      if (!den.basis.empty() || !den.scalar.is_constant()) {
        throw UnsupportedFormError("division by a non-constant");
      }
      if (den.scalar.is_zero()) throw UnsupportedFormError("division by zero");
      Rational inverse = 1 / den.scalar.constant_value();
      return times_scalar(normalize_linear(raw.children()[0]), Expr(inverse));
    }
    case RawExpr::Kind::Power: {
      unsigned n = checked_exponent(raw.value());
      LinearForm base = normalize_linear(raw.children()[0]);
      if (!base.basis.empty()) {
        if (n == 1) return base;
        throw UnsupportedFormError("power of a vector-field term");
      }
      return {base.scalar.pow(n), {}};
    }
  }
  return {};
}

Expr normalize(const RawExpr& raw) {
  LinearForm form = normalize_linear(raw);
  if (!form.basis.empty()) throw UnsupportedFormError("vector-field term in a scalar expression");
  return form.scalar;
}

// ------------------------------------------------------------------ parser

namespace {

struct Token {
  enum class Kind { Number, Ident, Basis, Op, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  Lexer(std::string_view text, int line, int column) : text_(text), line_(line), column_(column) {}

  Token next() {
    skip_blank();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Token::Kind::Number;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        tok.text.push_back(advance());
      }
      return tok;
    }
    if (is_ident_start(c)) {
      if (text_.substr(pos_, 3) == "d/d" && pos_ + 3 < text_.size() &&
          is_ident_start(text_[pos_ + 3])) {
        tok.kind = Token::Kind::Basis;
        advance();
        advance();
        advance();
      } else {
        tok.kind = Token::Kind::Ident;
      }
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) tok.text.push_back(advance());
      return tok;
    }
    if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      tok.kind = Token::Kind::Op;
      tok.text.push_back(advance());
      return tok;
    }
    throw ParseError(tok.line, tok.column, std::string("unexpected character '") + c + "'");
  }

 private:
  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& table, bool allow_basis, int line, int column)
      : lexer_(text, line, column), table_(table), allow_basis_(allow_basis) {
    current_ = lexer_.next();
  }

  RawExpr parse_all() {
    if (current_.kind == Token::Kind::End) fail(current_, "empty expression");
    RawExpr e = parse_sum();
    if (current_.kind != Token::Kind::End) fail(current_, "unexpected '" + current_.text + "'");
    return e;
  }

 private:
  [[noreturn]] static void fail(const Token& at, const std::string& message) {
    throw ParseError(at.line, at.column, message);
  }

  bool is_op(const char* op) const {
    return current_.kind == Token::Kind::Op && current_.text == op;
  }

  void consume() { current_ = lexer_.next(); }

  RawExpr parse_sum() {
    std::vector<RawExpr> terms;
    terms.push_back(parse_product());
    while (is_op("+") || is_op("-")) {
      bool minus = is_op("-");
      consume();
      RawExpr t = parse_product();
      terms.push_back(minus ? RawExpr::negate(std::move(t)) : std::move(t));
    }
    return terms.size() == 1 ? std::move(terms.front()) : RawExpr::sum(std::move(terms));
  }

  RawExpr parse_product() {
    RawExpr acc = parse_unary();
    while (is_op("*") || is_op("/")) {
      bool divide = is_op("/");
      consume();
      RawExpr rhs = parse_unary();
      acc = divide ? RawExpr::quotient(std::move(acc), std::move(rhs))
                   : RawExpr::product({std::move(acc), std::move(rhs)});
    }
    return acc;
  }

  RawExpr parse_unary() {
    if (is_op("-")) {
      consume();
      return RawExpr::negate(parse_unary());
    }
    if (is_op("+")) {
      consume();
      return parse_unary();
    }
    return parse_power();
  }

  RawExpr parse_power() {
    RawExpr base = parse_primary();
    if (is_op("^")) {
      Token at = current_;
      consume();
      RawExpr exponent = parse_unary();
      Expr value;
      try {
        value = normalize(exponent);
      } catch (const UnsupportedFormError& e) {
        fail(at, e.what());
      }
      if (!value.is_constant()) fail(at, "exponent must be a constant");
      return RawExpr::power(std::move(base), value.constant_value());
    }
    return base;
  }

  RawExpr parse_primary() {
    Token tok = current_;
    switch (tok.kind) {
      case Token::Kind::Number: {
        consume();
        return RawExpr::number(Rational(tok.text));
      }
      case Token::Kind::Ident: {
        consume();
        auto atom = table_.lookup(tok.text);
        if (!atom) {
          throw UnknownSymbolError(tok.text, std::to_string(tok.line) + ":" +
                                                 std::to_string(tok.column) +
                                                 ": unknown coordinate '" + tok.text + "'");
        }
        return RawExpr::symbol(*atom);
      }
      case Token::Kind::Basis: {
        if (!allow_basis_) fail(tok, "vector-field term 'd/d" + tok.text + "' not allowed here");
        consume();
        auto atom = table_.lookup(tok.text);
        if (!atom) {
          throw UnknownSymbolError(tok.text, std::to_string(tok.line) + ":" +
                                                 std::to_string(tok.column) +
                                                 ": unknown coordinate '" + tok.text + "'");
        }
        return RawExpr::basis(*atom);
      }
      case Token::Kind::Op:
        if (tok.text == "(") {
          consume();
          RawExpr inner = parse_sum();
          if (!is_op(")")) fail(current_, "expected ')'");
          consume();
          return inner;
        }
        fail(tok, "unexpected '" + tok.text + "'");
      case Token::Kind::End:
        fail(tok, "unexpected end of input");
    }
    fail(tok, "unexpected token");
  }

  Lexer lexer_;
  const SymbolTable& table_;
  bool allow_basis_;
  Token current_;
};

}  // namespace

RawExpr parse_raw(std::string_view text, const SymbolTable& table, bool allow_basis,
                  int first_line, int first_column) {
  return Parser(text, table, allow_basis, first_line, first_column).parse_all();
}

Expr parse_expr(std::string_view text, const SymbolTable& table) {
  return normalize(parse_raw(text, table));
}

}  // namespace nonpolar::symcore
