#include "nonpolar/jetspace/registry.hpp"

#include <algorithm>

#include "nonpolar/errors.hpp"

namespace nonpolar::jetspace {

namespace {

std::string independent_name(int w) {
  return w == 0 ? "t" : "x" + std::to_string(w);
}

}  // namespace

int JetRegistry::add(const std::string& name, CoordinateInfo info) {
  int id = symbols_.add_coordinate(name);
  infos_.push_back(std::move(info));
  return id;
}

Atom JetRegistry::independent(int w) const {
  return independents_.at(static_cast<std::size_t>(w));
}

Atom JetRegistry::dependent(int d) const {
  return dependents_.at(static_cast<std::size_t>(d));
}

std::optional<Atom> JetRegistry::jet(int dep, std::vector<int> independents) const {
  std::sort(independents.begin(), independents.end());
  auto it = jets_.find({dep, independents});
  if (it == jets_.end()) return std::nullopt;
  return Atom::coordinate(it->second);
}

namespace {

Atom require_jet(const JetRegistry& r, int dep, std::vector<int> ws) {
  auto j = r.jet(dep, std::move(ws));
  if (!j) throw JetOrderError("jet is not registered");
  return *j;
}

}  // namespace

Atom JetRegistry::u_t(int k) const { return require_jet(*this, k - 1, {0}); }
Atom JetRegistry::u_x(int k, int l) const { return require_jet(*this, k - 1, {l}); }
Atom JetRegistry::u_xx(int k, int l, int j) const { return require_jet(*this, k - 1, {l, j}); }
Atom JetRegistry::u_tx(int k, int l) const { return require_jet(*this, k - 1, {0, l}); }
Atom JetRegistry::p_t() const { return require_jet(*this, dimension_, {0}); }
Atom JetRegistry::p_x(int i) const { return require_jet(*this, dimension_, {i}); }
Atom JetRegistry::rho_t() const { return require_jet(*this, dimension_ + 1, {0}); }
Atom JetRegistry::rho_x(int i) const { return require_jet(*this, dimension_ + 1, {i}); }

Atom JetRegistry::pi(int i, int j) const {
  if (i > j) std::swap(i, j);
  return Atom::function(pi_ids_.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1)));
}

Atom JetRegistry::pi_d(int i, int j, int k, int l) const {
  return Atom::derivative(pi(i, j).id, {u_x(k, l).id});
}

const CoordinateInfo& JetRegistry::info(const Atom& coordinate) const {
  if (!coordinate.is_coordinate()) throw Error("'" + name(coordinate) + "' is not a coordinate");
  return infos_.at(static_cast<std::size_t>(coordinate.id));
}

bool JetRegistry::has_role(const Atom& a, CoordinateRole role) const {
  return a.is_coordinate() && infos_.at(static_cast<std::size_t>(a.id)).role == role;
}

int JetRegistry::jet_order(const Atom& a) const {
  if (!has_role(a, CoordinateRole::Jet)) return 0;
  return static_cast<int>(info(a).order.size());
}

std::vector<Atom> JetRegistry::stress() const {
  std::vector<Atom> out;
  for (int i = 1; i <= dimension_; ++i) {
    for (int j = i; j <= dimension_; ++j) out.push_back(pi(i, j));
  }
  return out;
}

std::vector<Atom> JetRegistry::stress_derivatives() const {
  std::vector<Atom> out;
  for (int i = 1; i <= dimension_; ++i) {
    for (int j = i; j <= dimension_; ++j) {
      for (int k = 1; k <= dimension_; ++k) {
        for (int l = 1; l <= dimension_; ++l) out.push_back(pi_d(i, j, k, l));
      }
    }
  }
  return out;
}

std::vector<Atom> JetRegistry::element_coordinates() const {
  std::vector<Atom> out = stress();
  auto d = stress_derivatives();
  out.insert(out.end(), d.begin(), d.end());
  out.push_back(G());
  out.push_back(H());
  return out;
}

std::vector<Atom> JetRegistry::base_coordinates() const {
  std::vector<Atom> out = independents_;
  out.insert(out.end(), dependents_.begin(), dependents_.end());
  auto s = stress();
  out.insert(out.end(), s.begin(), s.end());
  out.push_back(G());
  out.push_back(H());
  return out;
}

FlowSymbols JetRegistry::flow_symbols(int slot) const {
  return flow_.at(static_cast<std::size_t>(slot));
}

JetRegistry build_registry(int dimension, const std::vector<std::string>& unknowns) {
  if (dimension < 1 || dimension > 3) {
    throw UnsupportedDimensionError("unsupported dimension " + std::to_string(dimension) +
                                    " (expected 1, 2 or 3)");
  }
  JetRegistry r;
  r.dimension_ = dimension;
  const int n = dimension;

  for (int w = 0; w <= n; ++w) {
    r.independents_.push_back(
        Atom::coordinate(r.add(independent_name(w), {CoordinateRole::Independent, w, {}})));
  }
  std::vector<std::string> dep_names;
  for (int k = 1; k <= n; ++k) dep_names.push_back("u" + std::to_string(k));
  dep_names.emplace_back("p");
  dep_names.emplace_back("rho");
  for (int d = 0; d < n + 2; ++d) {
    r.dependents_.push_back(
        Atom::coordinate(r.add(dep_names[static_cast<std::size_t>(d)], {CoordinateRole::Dependent, d, {}})));
  }

  auto add_jet = [&](int d, std::vector<int> ws, std::vector<Atom>& family) {
    std::string name = dep_names[static_cast<std::size_t>(d)] + "_";
    for (int w : ws) name += independent_name(w);
    int id = r.add(name, {CoordinateRole::Jet, d, ws});
    r.jets_[{d, ws}] = id;
    family.push_back(Atom::coordinate(id));
  };
  for (int d = 0; d < n + 2; ++d) {
    for (int w = 0; w <= n; ++w) add_jet(d, {w}, r.first_jets_);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 1; l <= n; ++l) add_jet(k, {0, l}, r.second_jets_);
    for (int l = 1; l <= n; ++l) {
      for (int j = l; j <= n; ++j) add_jet(k, {l, j}, r.second_jets_);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 1; l <= n; ++l) {
      for (int j = 1; j < l; ++j) {
        r.symbols_.add_alias(dep_names[static_cast<std::size_t>(k)] + "_x" + std::to_string(l) +
                                 "x" + std::to_string(j),
                             r.u_xx(k + 1, j, l));
      }
    }
  }

  for (const auto& name : unknowns) {
    r.unknowns_.push_back(Atom::coordinate(r.add(name, {CoordinateRole::Unknown, -1, {}})));
  }
  for (const char* slot : {"a", "b"}) {
    std::string s = slot;
    FlowSymbols f{Atom::coordinate(r.add(s, {CoordinateRole::FlowParameter, -1, {}})),
                  Atom::coordinate(r.add("exp_" + s, {CoordinateRole::FlowParameter, -1, {}})),
                  Atom::coordinate(r.add("exp_m" + s, {CoordinateRole::FlowParameter, -1, {}}))};
    r.flow_.push_back(f);
  }

  std::vector<int> gradient;
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= n; ++l) gradient.push_back(r.u_x(k, l).id);
  }
  r.pi_ids_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      int id = r.symbols_.add_function("Pi" + std::to_string(i) + std::to_string(j), gradient,
                                       symcore::DerivativeNaming::Marked);
      r.pi_ids_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = id;
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j < i; ++j) {
      r.symbols_.add_alias("Pi" + std::to_string(i) + std::to_string(j), r.pi(j, i));
    }
  }
  r.g_id_ = r.symbols_.add_function("G", {r.p().id, r.rho().id}, symcore::DerivativeNaming::Concatenated);
  r.h_id_ = r.symbols_.add_function("H", {r.p().id, r.rho().id}, symcore::DerivativeNaming::Concatenated);
  return r;
}

namespace {

Expr total_of_coordinate(const Atom& a, int w, const JetRegistry& r) {
  const auto& info = r.info(a);
  switch (info.role) {
    case CoordinateRole::Independent:
      return info.index == w ? Expr(1) : Expr();
    case CoordinateRole::Dependent: {
      return Expr::atom(*r.jet(info.index, {w}));
    }
    case CoordinateRole::Jet: {
      std::vector<int> ws = info.order;
      ws.push_back(w);
      auto j = r.jet(info.index, ws);
      if (!j) {
        throw JetOrderError("total derivative of '" + r.name(a) + "' by " + r.name(r.independent(w)) +
                            " leaves the registered jet space");
      }
      return Expr::atom(*j);
    }
    case CoordinateRole::Unknown:
    case CoordinateRole::FlowParameter:
      return {};
  }
  return {};
}

}  // namespace

Expr total_derivative(const Expr& e, int w, const JetRegistry& r) {
  if (w < 0 || w > r.dimension()) throw Error("independent index out of range");
  const auto& symbols = r.symbols();
  Expr out;
  for (const Atom& a : e.atoms()) {
    Expr chain;
    if (a.is_coordinate()) {
      chain = total_of_coordinate(a, w, r);
    } else {
      for (int arg : symbols.function(a.id).arguments) {
        Expr inner = total_of_coordinate(Atom::coordinate(arg), w, r);
        if (!inner.is_zero()) chain += Expr::atom(*symbols.derivative(a, arg)) * inner;
      }
    }
    if (!chain.is_zero()) out += symcore::diff_atom(e, a) * chain;
  }
  return out;
}

}  // namespace nonpolar::jetspace
