#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nonpolar/errors.hpp"
#include "nonpolar/symcore/linear.hpp"
#include "nonpolar/symcore/symbols.hpp"

namespace nonpolar::symcore {
namespace {

struct Fixture {
  SymbolTable table;
  int p, rho, u1, u1_x1, rho_x1, rho_t, p_t;
  int G, H;
  Fixture() {
    p = table.add_coordinate("p");
    rho = table.add_coordinate("rho");
    u1 = table.add_coordinate("u1");
    u1_x1 = table.add_coordinate("u1_x1");
    rho_x1 = table.add_coordinate("rho_x1");
    rho_t = table.add_coordinate("rho_t");
    p_t = table.add_coordinate("p_t");
    G = table.add_function("G", {p, rho}, DerivativeNaming::Concatenated);
    H = table.add_function("H", {p, rho}, DerivativeNaming::Concatenated);
  }
  Expr c(int id) const { return Expr::atom(Atom::coordinate(id)); }
  Expr parse(const std::string& s) const { return parse_expr(s, table); }
};

RawExpr random_tree(std::mt19937& rng, const std::vector<Atom>& atoms, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 4);
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<std::size_t> which(0, atoms.size() - 1);
  switch (pick(rng)) {
    case 0:
      return RawExpr::number(Rational(small(rng), 1 + std::abs(small(rng))));
    case 1:
      return RawExpr::symbol(atoms[which(rng)]);
    case 2: {
      std::vector<RawExpr> kids;
      for (int k = 0; k < 3; ++k) kids.push_back(random_tree(rng, atoms, depth - 1));
      return RawExpr::sum(std::move(kids));
    }
    case 3: {
      std::vector<RawExpr> kids;
      for (int k = 0; k < 2; ++k) kids.push_back(random_tree(rng, atoms, depth - 1));
      return RawExpr::product(std::move(kids));
    }
    default:
      return RawExpr::power(random_tree(rng, atoms, depth - 1), std::abs(small(rng)));
  }
}

/// The canonical form spelled back out as a raw sum of products.
RawExpr to_raw(const Expr& e) {
  std::vector<RawExpr> terms;
  for (const auto& term : e.terms()) {
    std::vector<RawExpr> factors{RawExpr::number(term.coefficient)};
    for (const auto& [atom, exponent] : term.monomial.factors()) {
      factors.push_back(RawExpr::power(RawExpr::symbol(atom), exponent));
    }
    terms.push_back(RawExpr::product(std::move(factors)));
  }
  return RawExpr::sum(std::move(terms));
}

Expr random_expr(std::mt19937& rng, const std::vector<Atom>& atoms, int depth = 3) {
  return normalize(random_tree(rng, atoms, depth));
}

bool canonical(const Expr& e) {
  for (std::size_t k = 0; k < e.terms().size(); ++k) {
    if (e.terms()[k].coefficient == 0) return false;
    if (k > 0 && !(e.terms()[k - 1].monomial < e.terms()[k].monomial)) return false;
  }
  return true;
}

TEST(Normalize, RingIdentityExamples) {
  Fixture f;
  const Expr p = f.c(f.p), rho = f.c(f.rho), u = f.c(f.u1);
  EXPECT_EQ((p + rho) * (p - rho), p.pow(2) - rho.pow(2));
  EXPECT_TRUE((p + Expr(-1) * p).is_zero());
  EXPECT_EQ(Expr(2) * (rho * u) + Expr(3) * (u * rho), Expr(5) * rho * u);
  EXPECT_EQ((Expr(2) * (rho * u) + Expr(3) * (u * rho)).size(), 1u);
  EXPECT_EQ(Expr(Rational(2, 4)), Expr(Rational(1, 2)));
  EXPECT_EQ(f.parse("4/8*p"), f.parse("p/2"));
}

TEST(Normalize, RejectsNegativeAndFractionalExponents) {
  Fixture f;
  auto base = RawExpr::symbol(Atom::coordinate(f.p));
  EXPECT_THROW(normalize(RawExpr::power(base, -1)), UnsupportedFormError);
  EXPECT_THROW(normalize(RawExpr::power(base, Rational(1, 2))), UnsupportedFormError);
  EXPECT_THROW(normalize(RawExpr::quotient(RawExpr::number(1), base)), UnsupportedFormError);
  EXPECT_EQ(normalize(RawExpr::quotient(base, RawExpr::number(2))), f.c(f.p).scaled(Rational(1, 2)));
}

TEST(Normalize, IdempotentOnRandomTrees) {
  Fixture f;
  std::vector<Atom> atoms{Atom::coordinate(f.p), Atom::coordinate(f.rho), Atom::coordinate(f.u1),
                          Atom::function(f.G), Atom::derivative(f.G, {f.p})};
  std::mt19937 rng(11);
  for (int n = 0; n < 1000; ++n) {
    const Expr e = normalize(random_tree(rng, atoms, 4));
    ASSERT_TRUE(canonical(e));
    ASSERT_EQ(normalize(to_raw(e)), e);
  }
}

TEST(Normalize, RingAxiomsOnRandomInputs) {
  Fixture f;
  std::vector<Atom> atoms{Atom::coordinate(f.p), Atom::coordinate(f.rho), Atom::function(f.H)};
  std::mt19937 rng(12);
  for (int n = 0; n < 200; ++n) {
    Expr a = random_expr(rng, atoms), b = random_expr(rng, atoms), c = random_expr(rng, atoms);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(DiffPartial, Examples) {
  Fixture f;
  const Expr p = f.c(f.p), rho = f.c(f.rho);
  EXPECT_EQ(diff_partial(p.pow(2) * rho, f.p, f.table), Expr(2) * p * rho);
  EXPECT_EQ(diff_partial(Expr::atom(Atom::function(f.G)), f.rho, f.table),
            Expr::atom(Atom::derivative(f.G, {f.rho})));
  EXPECT_TRUE(diff_partial(Expr::atom(Atom::function(f.G)), f.u1, f.table).is_zero());
  EXPECT_EQ(f.table.name(Atom::derivative(f.G, {f.rho, f.p})), "G_prho");
}

TEST(DiffPartial, UndeclaredCoordinate) {
  Fixture f;
  EXPECT_THROW(diff_partial(f.c(f.p), 999, f.table), UnknownSymbolError);
}

TEST(DiffPartial, LinearityLeibnizClairaut) {
  Fixture f;
  std::vector<Atom> atoms{Atom::coordinate(f.p), Atom::coordinate(f.rho), Atom::coordinate(f.u1),
                          Atom::function(f.G), Atom::function(f.H)};
  std::vector<int> coords{f.p, f.rho, f.u1};
  std::mt19937 rng(13);
  for (int n = 0; n < 200; ++n) {
    Expr a = random_expr(rng, atoms), b = random_expr(rng, atoms);
    for (int v : coords) {
      ASSERT_EQ(diff_partial(a.scaled(3) + b, v, f.table),
                diff_partial(a, v, f.table).scaled(3) + diff_partial(b, v, f.table));
      ASSERT_EQ(diff_partial(a * b, v, f.table),
                diff_partial(a, v, f.table) * b + a * diff_partial(b, v, f.table));
      for (int w : coords) {
        ASSERT_EQ(diff_partial(diff_partial(a, v, f.table), w, f.table),
                  diff_partial(diff_partial(a, w, f.table), v, f.table));
      }
    }
  }
}

TEST(DiffPartial, MatchesCentralDifference) {
  Fixture f;
  std::vector<Atom> atoms{Atom::coordinate(f.p), Atom::coordinate(f.rho), Atom::coordinate(f.u1)};
  std::mt19937 rng(14);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  const double h = 1e-5;
  for (int n = 0; n < 200; ++n) {
    Expr e = random_expr(rng, atoms);
    std::map<Atom, double> pt;
    for (const auto& a : atoms) pt[a] = dist(rng);
    for (const auto& a : atoms) {
      auto plus = pt, minus = pt;
      plus[a] += h;
      minus[a] -= h;
      const double fd = (evaluate(e, plus) - evaluate(e, minus)) / (2 * h);
      const double sym = evaluate(diff_partial(e, a.id, f.table), pt);
      ASSERT_LE(std::abs(fd - sym) / std::max(1.0, std::abs(sym)), 1e-6) << to_text(e, f.table);
    }
  }
}

TEST(Substitute, Examples) {
  Fixture f;
  const Atom rho_t = Atom::coordinate(f.rho_t), p_t = Atom::coordinate(f.p_t);
  EXPECT_TRUE(substitute(f.parse("rho_t + rho*u1_x1"), {{rho_t, f.parse("-rho*u1_x1")}}).is_zero());
  EXPECT_EQ(substitute(f.c(f.p), {}), f.c(f.p));
  // G_p * p_t with p_t -> -G*u1_x1, expanded by hand: -G*G_p*u1_x1
  const Expr G = Expr::atom(Atom::function(f.G));
  const Expr G_p = Expr::atom(Atom::derivative(f.G, {f.p}));
  const Expr expected = Expr(-1) * G * G_p * f.c(f.u1_x1);
  EXPECT_EQ(substitute(f.parse("G_p*p_t"), {{p_t, f.parse("-G*u1_x1")}}), expected);
}

TEST(Substitute, RejectsCycles) {
  Fixture f;
  const Atom p = Atom::coordinate(f.p);
  EXPECT_THROW(substitute(f.c(f.p), {{p, f.parse("p + rho")}}), CyclicSubstitutionError);
  const Atom rho = Atom::coordinate(f.rho);
  EXPECT_THROW(substitute(f.c(f.p), {{p, f.c(f.rho)}, {rho, f.c(f.u1)}}), CyclicSubstitutionError);
}

TEST(Substitute, IdentityMapOnRandomInputs) {
  Fixture f;
  std::vector<Atom> atoms{Atom::coordinate(f.p), Atom::coordinate(f.rho), Atom::function(f.G)};
  std::mt19937 rng(15);
  for (int n = 0; n < 100; ++n) {
    Expr e = random_expr(rng, atoms);
    std::map<Atom, Expr> id;
    for (const auto& a : atoms) id[a] = Expr::atom(a);
    ASSERT_EQ(compose(e, id), e);
  }
}

TEST(Collect, Examples) {
  Fixture f;
  const Atom ux = Atom::coordinate(f.u1_x1);
  auto split = collect(f.parse("rho*u1_x1 + u1*rho_x1"), std::set<Atom>{ux});
  ASSERT_EQ(split.size(), 2u);
  EXPECT_EQ(split.at(Monomial(ux)), f.c(f.rho));
  EXPECT_EQ(split.at(Monomial()), f.parse("u1*rho_x1"));

  EXPECT_TRUE(collect(Expr(), std::set<Atom>{Atom::coordinate(f.p)}).empty());

  auto squared = collect(f.parse("(p + rho)*u1_x1^2"), std::set<Atom>{ux});
  ASSERT_EQ(squared.size(), 1u);
  EXPECT_EQ(squared.at(Monomial(ux, 2)), f.parse("p + rho"));
}

TEST(Collect, ReconstructionOnRandomInputs) {
  Fixture f;
  std::vector<Atom> atoms{Atom::coordinate(f.p), Atom::coordinate(f.rho), Atom::coordinate(f.u1_x1),
                          Atom::function(f.G)};
  std::set<Atom> parametric{Atom::coordinate(f.u1_x1), Atom::function(f.G)};
  std::mt19937 rng(16);
  for (int n = 0; n < 200; ++n) {
    Expr e = random_expr(rng, atoms);
    auto split = collect(e, parametric);
    ASSERT_EQ(recombine(split), e);
    for (const auto& [m, value] : split) {
      for (const auto& a : parametric) ASSERT_FALSE(value.contains(a));
    }
  }
}

TEST(IsZero, Examples) {
  Fixture f;
  EXPECT_TRUE(is_zero(f.parse("p - p")));
  EXPECT_FALSE(is_zero(f.parse("G_p")));
}

TEST(Evaluate, Examples) {
  Fixture f;
  const Atom p = Atom::coordinate(f.p), rho = Atom::coordinate(f.rho);
  EXPECT_EQ(evaluate(f.parse("2*p*rho"), std::map<Atom, Rational>{{p, 3}, {rho, 2}}), 12);
  EXPECT_EQ(evaluate(f.parse("p - p"), std::map<Atom, Rational>{}), 0);
  EXPECT_THROW(evaluate(f.parse("p*rho"), std::map<Atom, Rational>{{p, 1}}), MissingBindingError);
}

TEST(Evaluate, RingHomomorphism) {
  Fixture f;
  std::vector<Atom> atoms{Atom::coordinate(f.p), Atom::coordinate(f.rho), Atom::function(f.G)};
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int n = 0; n < 200; ++n) {
    Expr a = random_expr(rng, atoms), b = random_expr(rng, atoms);
    std::map<Atom, Rational> pt;
    for (const auto& at : atoms) {
      pt[at] = Rational(num(rng), 7);
      pt[at].canonicalize();
    }
    ASSERT_EQ(evaluate(a + b, pt), evaluate(a, pt) + evaluate(b, pt));
    ASSERT_EQ(evaluate(a * b, pt), evaluate(a, pt) * evaluate(b, pt));
  }
}

TEST(Text, RoundTripOnRandomInputs) {
  Fixture f;
  std::vector<Atom> atoms{Atom::coordinate(f.p), Atom::coordinate(f.rho), Atom::coordinate(f.u1_x1),
                          Atom::function(f.G), Atom::derivative(f.H, {f.p, f.rho})};
  std::mt19937 rng(18);
  for (int n = 0; n < 300; ++n) {
    Expr e = random_expr(rng, atoms);
    ASSERT_EQ(parse_expr(to_text(e, f.table), f.table), e) << to_text(e, f.table);
  }
}

TEST(Text, Forms) {
  Fixture f;
  EXPECT_EQ(to_text(Expr(), f.table), "0");
  EXPECT_EQ(to_text(Expr(1), f.table), "1");
  EXPECT_EQ(to_text(f.parse("3/2*u1^2 - p*rho"), f.table), "-p*rho + 3/2*u1^2");
}

TEST(Parser, ErrorsCarryPosition) {
  Fixture f;
  try {
    parse_expr("p +\n  q", f.table);
    FAIL();
  } catch (const UnknownSymbolError& e) {
    EXPECT_EQ(e.symbol(), "q");
    EXPECT_NE(std::string(e.what()).find("2:3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_expr("p + * rho", f.table), ParseError);
  EXPECT_THROW(parse_expr("(p + rho", f.table), ParseError);
  EXPECT_THROW(parse_expr("p^-1", f.table), Error);
}

TEST(Linear, SolvesAffineSystems) {
  SymbolTable t;
  const Atom a = Atom::coordinate(t.add_coordinate("alpha"));
  const Atom b = Atom::coordinate(t.add_coordinate("beta"));
  const Atom c = Atom::coordinate(t.add_coordinate("gamma"));
  // alpha + beta = 3, alpha - beta = 1, gamma free
  auto sol = solve_linear({parse_expr("alpha + beta - 3", t), parse_expr("alpha - beta - 1", t)}, {a, b, c});
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->at(a), Expr(2));
  EXPECT_EQ(sol->at(b), Expr(1));
  EXPECT_FALSE(sol->count(c));
  EXPECT_FALSE(solve_linear({parse_expr("alpha - 1", t), parse_expr("alpha - 2", t)}, {a}));
  EXPECT_THROW(solve_linear({parse_expr("alpha*beta", t)}, {a, b}), UnsupportedFormError);
}

}  // namespace
}  // namespace nonpolar::symcore
