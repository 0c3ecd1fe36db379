#include "nonpolar/cli/dsl.hpp"

#include <cctype>

#include "nonpolar/errors.hpp"
#include "nonpolar/symcore/symbols.hpp"

namespace nonpolar::cli {

using symcore::Expr;

GeneratorSpec parse_generator(std::string_view src, const JetRegistry& r, const std::string& name,
                              int first_line, int first_column) {
  auto raw = symcore::parse_raw(src, r.symbols(), true, first_line, first_column);
  symcore::LinearForm form;
  try {
    form = symcore::normalize_linear(raw);
  } catch (const UnsupportedFormError& e) {
    throw ParseError(first_line, first_column, e.what());
  }
  if (!form.scalar.is_zero()) {
    throw ParseError(first_line, first_column,
                     "term without d/d<coordinate>: " + symcore::to_text(form.scalar, r.symbols()));
  }
  GeneratorSpec g(name);
  for (const auto& [atom, coefficient] : form.basis) g.add(atom, coefficient);
  liegen::check_ansatz(g, r);
  return g;
}

std::string print_generator(const GeneratorSpec& g, const JetRegistry& r) {
  std::string out;
  for (const auto& c : r.base_coordinates()) {
    Expr coefficient = g.coefficient(c);
    if (coefficient.is_zero()) continue;
    std::string basis = "d/d" + r.name(c);
    bool negative = false;
    std::string body;
    if (coefficient.size() == 1) {
      const auto& term = coefficient.terms().front();
      negative = term.coefficient < 0;
      Expr magnitude = negative ? -coefficient : coefficient;
      body = magnitude == Expr(1) ? basis : symcore::to_text(magnitude, r.symbols()) + "*" + basis;
    } else {
      body = "(" + symcore::to_text(coefficient, r.symbols()) + ")*" + basis;
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out.empty() ? "0*d/dt" : out;
}

namespace {

struct Position {
  int line = 1;
  int column = 1;
};

Position advance(Position p, std::string_view text) {
  for (char c : text) {
    if (c == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

/// True when the text contains something other than blanks and comments.
bool has_content(std::string_view text) {
  bool comment = false;
  for (char c : text) {
    if (comment) {
      if (c == '\n') comment = false;
    } else if (c == '#') {
      comment = true;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      return true;
    }
  }
  return false;
}

std::string_view strip_comments_prefix(std::string_view text, std::size_t& skipped) {
  skipped = 0;
  while (skipped < text.size()) {
    char c = text[skipped];
    if (c == '#') {
      while (skipped < text.size() && text[skipped] != '\n') ++skipped;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++skipped;
    } else {
      break;
    }
  }
  return text.substr(skipped);
}

}  // namespace

std::vector<GeneratorSpec> parse_document(std::string_view text, const JetRegistry& r) {
  std::vector<GeneratorSpec> out;
  Position pos;
  std::size_t start = 0;
  int anonymous = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    std::string_view chunk = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    if (has_content(chunk)) {
      std::size_t skipped = 0;
      std::string_view body = strip_comments_prefix(chunk, skipped);
      Position at = advance(pos, chunk.substr(0, skipped));
      std::string name;
      std::size_t k = 0;
      while (k < body.size() && (std::isalnum(static_cast<unsigned char>(body[k])) || body[k] == '_')) ++k;
      std::size_t eq = k;
      while (eq < body.size() && (body[eq] == ' ' || body[eq] == '\t')) ++eq;
      if (k > 0 && eq < body.size() && body[eq] == '=') {
        if (end == std::string_view::npos) {
          throw ParseError(at.line, at.column, "definition of '" + std::string(body.substr(0, k)) + "' lacks ';'");
        }
        name = std::string(body.substr(0, k));
        at = advance(at, body.substr(0, eq + 1));
        body.remove_prefix(eq + 1);
      } else {
        name = anonymous == 0 ? "custom" : "custom" + std::to_string(anonymous + 1);
        ++anonymous;
      }
      out.push_back(parse_generator(body, r, name, at.line, at.column));
    }
    if (end == std::string_view::npos) break;
    pos = advance(pos, text.substr(start, end - start + 1));
    start = end + 1;
  }
  if (out.empty()) throw ParseError(pos.line, pos.column, "no generator definitions");
  return out;
}

std::string print_document(const std::vector<GeneratorSpec>& generators, const JetRegistry& r) {
  std::string out;
  for (const auto& g : generators) out += g.name() + " = " + print_generator(g, r) + " ;\n";
  return out;
}

}  // namespace nonpolar::cli
