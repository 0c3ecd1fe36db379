#include "nonpolar/symcore/linear.hpp"

#include <algorithm>

#include "nonpolar/errors.hpp"

namespace nonpolar::symcore {

std::vector<Expr> linear_conditions(const Expr& e, const std::vector<Atom>& unknowns) {
  std::set<Atom> solve_for(unknowns.begin(), unknowns.end());
  std::vector<Expr> out;
  for (auto& [monomial, coefficient] :
       collect(e, [&](const Atom& a) { return solve_for.count(a) == 0; })) {
    out.push_back(coefficient);
  }
  return out;
}

std::optional<std::map<Atom, Expr>> solve_linear(const std::vector<Expr>& conditions,
                                                 const std::vector<Atom>& unknowns) {
  const std::size_t cols = unknowns.size();
  // Row layout: coefficients of the unknowns, then the constant term.
  std::vector<std::vector<Rational>> rows;
  for (const Expr& c : conditions) {
    std::vector<Rational> row(cols + 1, Rational(0));
    for (const auto& t : c.terms()) {
      if (t.monomial.is_one()) {
        row[cols] += t.coefficient;
        continue;
      }
      const auto& factors = t.monomial.factors();
      auto it = std::find(unknowns.begin(), unknowns.end(), factors.front().first);
      if (factors.size() != 1 || factors.front().second != 1 || it == unknowns.end()) {
        throw UnsupportedFormError("condition is not affine in the unknowns");
      }
      row[static_cast<std::size_t>(it - unknowns.begin())] += t.coefficient;
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == r || rows[q][c] == 0) continue;
      Rational f = rows[q][c];
      for (std::size_t k = 0; k <= cols; ++k) rows[q][k] -= f * rows[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t q = r; q < rows.size(); ++q) {
    if (rows[q][cols] != 0) return std::nullopt;
  }

  std::map<Atom, Expr> solution;
  for (std::size_t k = 0; k < pivot_col.size(); ++k) {
    Expr value(-rows[k][cols]);
    for (std::size_t c = 0; c < cols; ++c) {
      if (c == pivot_col[k] || rows[k][c] == 0) continue;
      value -= Expr::atom(unknowns[c]).scaled(rows[k][c]);
    }
    solution.emplace(unknowns[pivot_col[k]], value);
  }
  return solution;
}

}  // namespace nonpolar::symcore
