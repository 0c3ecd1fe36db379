#include "nonpolar/cli/report.hpp"

#include "nonpolar/liegen/generator.hpp"

#ifndef NONPOLAR_VERSION
#define NONPOLAR_VERSION "0.0.0"
#endif

namespace nonpolar::cli {

using symcore::to_text;

Json assumptions() {
  Json mu = Json::object();
  for (const auto& [key, text] : liegen::ansatz_description()) mu[key] = text;
  Json a = Json::object();
  a["pressure_equation"] =
      "p_t + (u . grad) p + G div u + H Phi = 0 with Phi = sum_ij Pi^ij u^i_x^j (pressure form)";
  a["mu_ansatz"] = mu;
  a["z1_stress_derivative_action"] = "2 Pi^ij_kl d/dPi^ij_kl";
  a["restriction"] = "rho_t, p_t eliminated directly; rho*u_t eliminated after multiplying by rho";
  a["parametric_atoms"] =
      "all non-principal jets, Pi^ij, Pi^ij_kl, G, H; t, x, u, p, rho stay in coefficients";
  return a;
}

Json report_header(const std::string& command, int dimension) {
  Json j = Json::object();
  j["tool"] = "nonpolar";
  j["version"] = NONPOLAR_VERSION;
  j["command"] = command;
  j["dimension"] = dimension;
  j["assumptions"] = assumptions();
  return j;
}

Json finite_json(const deteq::FiniteVerdict& f, const jetspace::JetRegistry& r) {
  Json j = Json::object();
  j["pass"] = f.pass();
  Json eqs = Json::array();
  for (const auto& e : f.equations) {
    Json row = Json::object();
    row["equation"] = e.equation;
    row["pass"] = e.pass;
    row["lambda"] = e.lambda ? Json(to_text(*e.lambda, r.symbols())) : Json(nullptr);
    eqs.push_back(row);
  }
  j["equations"] = eqs;
  return j;
}

Json verdict_json(const deteq::Verdict& v, const std::string& dsl, const std::string& provenance,
                  const jetspace::JetRegistry& r) {
  Json j = Json::object();
  j["generator"] = v.generator;
  j["provenance"] = provenance;
  j["dsl"] = dsl;
  j["status"] = v.zero() ? "zero" : "nonzero";
  Json eqs = Json::array();
  for (const auto& e : v.equations) {
    Json row = Json::object();
    row["equation"] = e.equation;
    row["status"] = e.zero ? "zero" : "nonzero";
    row["rho_power"] = e.rho_power;
    row["conditions"] = e.condition_count;
    if (e.witness) {
      Json w = Json::object();
      w["monomial"] = to_text(e.witness->monomial, r.symbols());
      w["coefficient"] = to_text(e.witness->coefficient, r.symbols());
      row["witness"] = w;
    } else {
      row["witness"] = nullptr;
    }
    eqs.push_back(row);
  }
  j["equations"] = eqs;
  j["finite_check"] = v.finite ? finite_json(*v.finite, r) : Json(nullptr);
  j["agreement"] = v.agreement ? Json(*v.agreement) : Json(nullptr);
  return j;
}

Json determining_json(const deteq::DeterminingSystem& ds, const std::string& dsl,
                      const jetspace::JetRegistry& r) {
  Json j = Json::object();
  j["generator"] = ds.generator;
  j["dsl"] = dsl;
  Json parametric = Json::array();
  for (const auto& a : ds.parametric) parametric.push_back(r.name(a));
  j["parametric_atoms"] = parametric;
  Json eqs = Json::array();
  for (const auto& e : ds.equations) {
    Json row = Json::object();
    row["equation"] = e.equation;
    row["rho_power"] = e.rho_power;
    Json conds = Json::array();
    for (const auto& c : e.conditions) {
      Json cj = Json::object();
      cj["monomial"] = to_text(c.monomial, r.symbols());
      cj["coefficient"] = to_text(c.coefficient, r.symbols());
      conds.push_back(cj);
    }
    row["conditions"] = conds;
    eqs.push_back(row);
  }
  j["equations"] = eqs;
  return j;
}

std::string verdict_text(const deteq::Verdict& v, const jetspace::JetRegistry& r) {
  std::string out = v.generator + ": " + (v.zero() ? "zero" : "NONZERO");
  if (v.finite) {
    out += "  finite=" + std::string(v.finite->pass() ? "pass" : "fail");
    out += " lambda=(";
    for (std::size_t k = 0; k < v.finite->equations.size(); ++k) {
      const auto& e = v.finite->equations[k];
      if (k) out += ", ";
      out += e.lambda ? to_text(*e.lambda, r.symbols()) : "-";
    }
    out += ")";
    out += std::string("  agreement=") + (*v.agreement ? "yes" : "NO");
  }
  out += "\n";
  for (const auto& e : v.equations) {
    if (e.zero) continue;
    out += "  " + e.equation + " (rho^" + std::to_string(e.rho_power) + ", " +
           std::to_string(e.condition_count) + " conditions) witness: [" +
           to_text(e.witness->monomial, r.symbols()) + "] " +
           to_text(e.witness->coefficient, r.symbols()) + "\n";
  }
  return out;
}

std::string dump(const Json& j) {
  return j.dump(2) + "\n";
}

}  // namespace nonpolar::cli
