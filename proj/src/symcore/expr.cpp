#include "nonpolar/symcore/expr.hpp"

#include <algorithm>

#include "nonpolar/errors.hpp"

namespace nonpolar::symcore {

std::string to_string(const Rational& q) {
  return q.get_str();
}

Atom Atom::derivative(int function_id, std::vector<int> wrt) {
  std::sort(wrt.begin(), wrt.end());
  return {AtomKind::Derivative, function_id, std::move(wrt)};
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(const Atom& a, int exponent) {
  if (exponent > 0) factors_.emplace_back(a, exponent);
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& l, const Factor& r) { return l.first < r.first; });
  Monomial m;
  for (auto& f : factors) {
    if (f.second == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == f.first) {
      m.factors_.back().second += f.second;
    } else {
      m.factors_.push_back(std::move(f));
    }
  }
  return m;
}

int Monomial::degree(const Atom& a) const {
  for (const auto& [atom, e] : factors_) {
    if (atom == a) return e;
  }
  return 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto i = factors_.begin();
  auto j = other.factors_.begin();
  while (i != factors_.end() && j != other.factors_.end()) {
    auto c = i->first <=> j->first;
    if (c < 0) {
      out.factors_.push_back(*i++);
    } else if (c > 0) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.factors_.insert(out.factors_.end(), i, factors_.end());
  out.factors_.insert(out.factors_.end(), j, other.factors_.end());
  return out;
}

Monomial Monomial::without(const Atom& a) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (!(f.first == a)) out.factors_.push_back(f);
  }
  return out;
}

Monomial Monomial::lowered(const Atom& a, int by) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (f.first == a) {
      if (f.second > by) out.factors_.emplace_back(f.first, f.second - by);
    } else {
      out.factors_.push_back(f);
    }
  }
  return out;
}

// -------------------------------------------------------------------- Expr

Expr::Expr(const Rational& constant) {
  Rational c = constant;
  c.canonicalize();
  if (c != 0) terms_.push_back({Monomial{}, std::move(c)});
}

Expr Expr::atom(const Atom& a) {
  return monomial(Monomial(a));
}

Expr Expr::monomial(const Monomial& m, const Rational& coefficient) {
  Expr e;
  Rational c = coefficient;
  c.canonicalize();
  if (c != 0) e.terms_.push_back({m, std::move(c)});
  return e;
}

Expr Expr::from_terms(std::vector<Term> terms) {
  for (auto& t : terms) t.coefficient.canonicalize();
  std::sort(terms.begin(), terms.end(),
            [](const Term& l, const Term& r) { return l.monomial < r.monomial; });
  Expr e;
  for (auto& t : terms) {
    if (!e.terms_.empty() && e.terms_.back().monomial == t.monomial) {
      e.terms_.back().coefficient += t.coefficient;
    } else {
      if (!e.terms_.empty() && e.terms_.back().coefficient == 0) e.terms_.pop_back();
      e.terms_.push_back(std::move(t));
    }
  }
  if (!e.terms_.empty() && e.terms_.back().coefficient == 0) e.terms_.pop_back();
  return e;
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

Rational Expr::constant_value() const {
  if (!terms_.empty() && terms_.front().monomial.is_one()) return terms_.front().coefficient;
  return 0;
}

std::set<Atom> Expr::atoms() const {
  std::set<Atom> out;
  for (const auto& t : terms_) {
    for (const auto& f : t.monomial.factors()) out.insert(f.first);
  }
  return out;
}

bool Expr::contains(const Atom& a) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.monomial.degree(a) > 0; });
}

int Expr::degree(const Atom& a) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree(a));
  return d;
}

Expr Expr::operator-() const {
  Expr e = *this;
  for (auto& t : e.terms_) t.coefficient = -t.coefficient;
  return e;
}

Expr Expr::operator+(const Expr& other) const {
  Expr out;
  out.terms_.reserve(terms_.size() + other.terms_.size());
  auto i = terms_.begin();
  auto j = other.terms_.begin();
  while (i != terms_.end() && j != other.terms_.end()) {
    auto c = i->monomial <=> j->monomial;
    if (c < 0) {
      out.terms_.push_back(*i++);
    } else if (c > 0) {
      out.terms_.push_back(*j++);
    } else {
      Rational sum = i->coefficient + j->coefficient;
      if (sum != 0) out.terms_.push_back({i->monomial, sum});
      ++i;
      ++j;
    }
  }
  out.terms_.insert(out.terms_.end(), i, terms_.end());
  out.terms_.insert(out.terms_.end(), j, other.terms_.end());
  return out;
}

Expr Expr::operator-(const Expr& other) const {
  return *this + (-other);
}

Expr Expr::operator*(const Expr& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Term> products;
  products.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      products.push_back({a.monomial * b.monomial, a.coefficient * b.coefficient});
    }
  }
  return from_terms(std::move(products));
}

Expr Expr::scaled(const Rational& factor) const {
  Rational f = factor;
  f.canonicalize();
  if (f == 0) return {};
  Expr e = *this;
  for (auto& t : e.terms_) t.coefficient *= f;
  return e;
}

Expr Expr::pow(unsigned exponent) const {
  Expr result(1);
  Expr base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].coefficient != b.terms_[k].coefficient ||
        !(a.terms_[k].monomial == b.terms_[k].monomial)) {
      return false;
    }
  }
  return true;
}

bool is_zero(const Expr& e) {
  return e.is_zero();
}

// ------------------------------------------------------------- operations

Expr diff_atom(const Expr& e, const Atom& a) {
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    int d = t.monomial.degree(a);
    if (d == 0) continue;
    out.push_back({t.monomial.lowered(a, 1), t.coefficient * d});
  }
  return Expr::from_terms(std::move(out));
}

Expr compose(const Expr& e, const std::map<Atom, Expr>& bindings) {
  if (bindings.empty()) return e;
  Expr result;
  for (const auto& t : e.terms()) {
    std::vector<Monomial::Factor> kept;
    Expr factor(t.coefficient);
    for (const auto& [atom, exponent] : t.monomial.factors()) {
      auto it = bindings.find(atom);
      if (it == bindings.end()) {
        kept.emplace_back(atom, exponent);
      } else {
        factor = factor * it->second.pow(static_cast<unsigned>(exponent));
      }
    }
    result += factor * Expr::monomial(Monomial::from_factors(std::move(kept)));
  }
  return result;
}

Expr substitute(const Expr& e, const std::map<Atom, Expr>& bindings) {
  for (const auto& [key, value] : bindings) {
    for (const auto& [other, unused] : bindings) {
      if (value.contains(other)) {
        throw CyclicSubstitutionError(
            "substitution is recursive: a bound atom occurs in a binding value");
      }
    }
  }
  return compose(e, bindings);
}

std::map<Monomial, Expr> collect(const Expr& e,
                                 const std::function<bool(const Atom&)>& is_parametric) {
  std::map<Monomial, std::vector<Term>> buckets;
  for (const auto& t : e.terms()) {
    std::vector<Monomial::Factor> key;
    std::vector<Monomial::Factor> rest;
    for (const auto& f : t.monomial.factors()) {
      (is_parametric(f.first) ? key : rest).push_back(f);
    }
    buckets[Monomial::from_factors(std::move(key))].push_back(
        {Monomial::from_factors(std::move(rest)), t.coefficient});
  }
  std::map<Monomial, Expr> out;
  for (auto& [key, terms] : buckets) out.emplace(key, Expr::from_terms(std::move(terms)));
  return out;
}

std::map<Monomial, Expr> collect(const Expr& e, const std::set<Atom>& parametric) {
  return collect(e, [&](const Atom& a) { return parametric.count(a) > 0; });
}

Expr recombine(const std::map<Monomial, Expr>& split) {
  Expr out;
  for (const auto& [key, value] : split) out += Expr::monomial(key) * value;
  return out;
}

namespace {

template <typename Number>
Number evaluate_impl(const Expr& e, const std::map<Atom, Number>& point,
                     Number (*convert)(const Rational&)) {
  Number total = convert(0);
  for (const auto& t : e.terms()) {
    Number value = convert(t.coefficient);
    for (const auto& [atom, exponent] : t.monomial.factors()) {
      auto it = point.find(atom);
      if (it == point.end()) {
        throw MissingBindingError("evaluation point does not bind every atom");
      }
      for (int k = 0; k < exponent; ++k) value *= it->second;
    }
    total += value;
  }
  return total;
}

Rational identity(const Rational& q) { return q; }
double to_double(const Rational& q) { return q.get_d(); }

}  // namespace

Rational evaluate(const Expr& e, const std::map<Atom, Rational>& point) {
  return evaluate_impl<Rational>(e, point, &identity);
}

double evaluate(const Expr& e, const std::map<Atom, double>& point) {
  return evaluate_impl<double>(e, point, &to_double);
}

}  // namespace nonpolar::symcore
