#include "support.hpp"

#include <algorithm>
#include <cmath>

#include "nonpolar/errors.hpp"
#include "nonpolar/liegen/flow.hpp"

namespace nonpolar::testing {

std::vector<Atom> space_atoms(const JetRegistry& r) {
  std::vector<Atom> out;
  for (const auto* family : {&r.independents(), &r.dependents(), &r.first_jets(), &r.second_jets()}) {
    out.insert(out.end(), family->begin(), family->end());
  }
  for (const auto& a : r.element_coordinates()) out.push_back(a);
  return out;
}

std::map<Atom, double> random_point(const std::vector<Atom>& atoms, std::mt19937& rng, double lo,
                                    double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::map<Atom, double> out;
  for (const auto& a : atoms) out[a] = dist(rng);
  return out;
}

Rational random_rational(std::mt19937& rng, int span) {
  std::uniform_int_distribution<int> num(1, span);
  std::uniform_int_distribution<int> sign(0, 1);
  Rational q(num(rng) * (sign(rng) ? 1 : -1), num(rng));
  q.canonicalize();
  return q;
}

std::map<Atom, Rational> random_rational_point(const std::vector<Atom>& atoms, std::mt19937& rng) {
  std::map<Atom, Rational> out;
  for (const auto& a : atoms) out[a] = random_rational(rng);
  return out;
}

std::optional<Expr> prolonged_coefficient(const liegen::ProlongedGenerator& pg, const Atom& a) {
  auto it = pg.coefficients().find(a);
  if (it == pg.coefficients().end()) return Expr();
  return it->second;
}

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix rotation_matrix(int n, int i, int j, double a) {
  Matrix R(n, std::vector<double>(n, 0.0));
  for (int k = 0; k < n; ++k) R[k][k] = 1.0;
  R[i - 1][i - 1] = std::cos(a);
  R[j - 1][j - 1] = std::cos(a);
  R[i - 1][j - 1] = -std::sin(a);
  R[j - 1][i - 1] = std::sin(a);
  return R;
}

}  // namespace

std::map<Atom, double> rotation_image(const JetRegistry& r, int i, int j, bool tensorial,
                                      const std::map<Atom, double>& point, double a) {
  const int n = r.dimension();
  const Matrix R = rotation_matrix(n, i, j, a);
  Matrix T(n, std::vector<double>(n, 0.0));
  for (int k = 0; k < n; ++k) T[k][k] = 1.0;
  if (tensorial) T = R;

  auto vec = [&](auto atom_of) {
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) v[k] = point.at(atom_of(k + 1));
    return v;
  };
  auto rotate = [&](const std::vector<double>& v) {
    std::vector<double> w(n, 0.0);
    for (int k = 0; k < n; ++k)
      for (int b = 0; b < n; ++b) w[k] += R[k][b] * v[b];
    return w;
  };

  std::map<Atom, double> out = point;
  auto set_vector = [&](auto atom_of) {
    auto w = rotate(vec(atom_of));
    for (int k = 0; k < n; ++k) out[atom_of(k + 1)] = w[k];
  };
  set_vector([&](int k) { return r.x(k); });
  set_vector([&](int k) { return r.u(k); });
  set_vector([&](int k) { return r.u_t(k); });
  set_vector([&](int k) { return r.p_x(k); });
  set_vector([&](int k) { return r.rho_x(k); });

  auto conjugate = [&](auto atom_of) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        double s = 0.0;
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) s += R[k][c] * point.at(atom_of(c + 1, d + 1)) * R[l][d];
        out[atom_of(k + 1, l + 1)] = s;
      }
    }
  };
  conjugate([&](int k, int l) { return r.u_x(k, l); });
  conjugate([&](int k, int l) { return r.u_tx(k, l); });

  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      for (int m = l; m < n; ++m) {
        double s = 0.0;
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            for (int e = 0; e < n; ++e)
              s += R[k][c] * R[l][d] * R[m][e] * point.at(r.u_xx(c + 1, d + 1, e + 1));
        out[r.u_xx(k + 1, l + 1, m + 1)] = s;
      }
    }
  }

  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) {
      double s = 0.0;
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) s += T[p][c] * T[q][d] * point.at(r.pi(c + 1, d + 1));
      out[r.pi(p + 1, q + 1)] = s;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double sd = 0.0;
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d)
              for (int e = 0; e < n; ++e)
                for (int f = 0; f < n; ++f)
                  sd += T[p][c] * T[q][d] * point.at(r.pi_d(c + 1, d + 1, e + 1, f + 1)) * R[k][e] *
                        R[l][f];
          out[r.pi_d(p + 1, q + 1, k + 1, l + 1)] = sd;
        }
      }
    }
  }
  return out;
}

FdResult fd_prolongation_check(const catalog::CatalogEntry& entry, const JetRegistry& r,
                               std::mt19937& rng, int points, double h) {
  const auto pg = liegen::prolong(entry.generator, r);
  const auto atoms = space_atoms(r);
  std::optional<liegen::FiniteTransformation> flow;
  int ri = 0;
  int rj = 0;
  bool tensorial = false;
  if (entry.has_flow) {
    flow = liegen::exponentiate(entry.name, r, liegen::symbolic_parameter(r));
  } else {
    // Jij_naive / Jij_tensorial
    ri = entry.name[1] - '0';
    rj = entry.name[2] - '0';
    tensorial = entry.name.find("tensorial") != std::string::npos;
  }
  const auto fs = r.flow_symbols(0);

  auto image = [&](const std::map<Atom, double>& pt, double a) {
    if (!flow) return rotation_image(r, ri, rj, tensorial, pt, a);
    std::map<Atom, double> bound = pt;
    bound[fs.a] = a;
    bound[fs.exp_pos] = std::exp(a);
    bound[fs.exp_neg] = std::exp(-a);
    std::map<Atom, double> out;
    for (const auto& c : atoms) {
      auto it = flow->images().find(c);
      out[c] = it == flow->images().end() ? pt.at(c) : symcore::evaluate(it->second, bound);
    }
    return out;
  };

  FdResult result;
  for (int n = 0; n < points; ++n) {
    const auto pt = random_point(atoms, rng);
    const auto plus = image(pt, h);
    const auto minus = image(pt, -h);
    for (const auto& c : atoms) {
      auto coefficient = prolonged_coefficient(pg, c);
      if (!coefficient) continue;
      const double fd = (plus.at(c) - minus.at(c)) / (2 * h);
      const double sym = symcore::evaluate(*coefficient, pt);
      const double err = std::abs(fd - sym) / std::max(1.0, std::abs(sym));
      ++result.compared;
      if (err >= result.max_error) {
        result.max_error = err;
        result.worst = r.name(c);
      }
    }
  }
  return result;
}

std::map<Atom, Expr> permute_axes(const JetRegistry& r, const std::vector<int>& sigma) {
  const int n = r.dimension();
  std::map<Atom, Expr> out;
  auto bind = [&](const Atom& from, const Atom& to) { out[from] = Expr::atom(to); };
  for (int i = 1; i <= n; ++i) bind(r.x(i), r.x(sigma[i]));
  for (const auto& dep : r.dependents()) {
    const int d = r.info(dep).index;
    bind(dep, r.dependent(d < n ? sigma[d + 1] - 1 : d));
  }
  for (const auto* family : {&r.first_jets(), &r.second_jets()}) {
    for (const auto& jet : *family) {
      const auto& info = r.info(jet);
      const int dep = info.index < n ? sigma[info.index + 1] - 1 : info.index;
      std::vector<int> order;
      for (int w : info.order) order.push_back(w == 0 ? 0 : sigma[w]);
      bind(jet, *r.jet(dep, order));
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      bind(r.pi(i, j), r.pi(sigma[i], sigma[j]));
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) bind(r.pi_d(i, j, k, l), r.pi_d(sigma[i], sigma[j], sigma[k], sigma[l]));
    }
  }
  return out;
}

}  // namespace nonpolar::testing
