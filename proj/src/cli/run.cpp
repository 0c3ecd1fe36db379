#include "nonpolar/cli/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "nonpolar/catalog/catalog.hpp"
#include "nonpolar/cli/dsl.hpp"
#include "nonpolar/cli/report.hpp"
#include "nonpolar/deteq/determining.hpp"
#include "nonpolar/errors.hpp"
#include "nonpolar/system/balance.hpp"

#ifndef NONPOLAR_VERSION
#define NONPOLAR_VERSION "0.0.0"
#endif

namespace nonpolar::cli {

namespace {

using jetspace::JetRegistry;
using symcore::to_text;

struct Options {
  int dimension = 3;
  std::vector<std::string> generators;
  std::string format = "text";
  std::string out_path;
  std::string param;
  std::string unknowns;
  bool table = false;
};

struct Selected {
  GeneratorSpec generator;
  std::string provenance;
  bool has_flow = false;
};

std::string provenance_label(const catalog::CatalogEntry& e) {
  if (e.provenance == catalog::Provenance::Theorem) return "theorem";
  return e.name.find("tensorial") != std::string::npos ? "rotation-candidate (not asserted)"
                                                       : "rotation-candidate";
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Selected> select(const std::vector<std::string>& specs, const JetRegistry& r,
                             const std::vector<catalog::CatalogEntry>& entries) {
  std::vector<Selected> out;
  auto from_entry = [&](const catalog::CatalogEntry& e) {
    out.push_back({e.generator, provenance_label(e), e.has_flow});
  };
  for (const auto& spec : specs) {
    if (spec == "all" || spec == "all-theorem") {
      for (const auto& e : entries) {
        if (spec == "all" || e.provenance == catalog::Provenance::Theorem) from_entry(e);
      }
    } else if (!spec.empty() && spec.front() == '@') {
      for (auto& g : parse_document(read_file(spec.substr(1)), r)) {
        out.push_back({std::move(g), "user", false});
      }
    } else if (spec.find("d/d") != std::string::npos) {
      out.push_back({parse_generator(spec, r), "user", false});
    } else {
      for (const auto& name : split_commas(spec)) {
        const auto* e = catalog::find_entry(entries, name);
        if (!e) throw UnknownSymbolError(name, "unknown generator '" + name + "'");
        from_entry(*e);
      }
    }
  }
  if (out.empty()) throw Error("no generator selected (use --gen)");
  return out;
}

std::string header_text(const std::string& command, int dimension) {
  std::string out = "nonpolar " NONPOLAR_VERSION " " + command + " dim=" + std::to_string(dimension) + "\n";
  out += "assumptions:\n";
  const Json a = assumptions();
  for (const auto& [key, value] : a.items()) {
    if (value.is_string()) {
      out += "  " + key + ": " + value.get<std::string>() + "\n";
    } else {
      for (const auto& [k2, v2] : value.items()) out += "  " + key + "." + k2 + ": " + v2.get<std::string>() + "\n";
    }
  }
  return out;
}

struct Output {
  std::string text;
  Json json;
  int exit = kPass;
};

Output cmd_verify(const Options& o) {
  const auto r = jetspace::build_registry(o.dimension);
  const auto s = balance::build_system(o.dimension, r);
  const auto entries = catalog::build_catalog(o.dimension, r);
  const auto selected = select(o.generators, r, entries);

  std::vector<deteq::VerifyJob> jobs;
  for (const auto& sel : selected) {
    deteq::VerifyJob job{sel.generator, std::nullopt};
    if (sel.has_flow) {
      job.flow = liegen::exponentiate(sel.generator.name(), r, liegen::symbolic_parameter(r));
    }
    jobs.push_back(std::move(job));
  }
  const auto verdicts = deteq::verify_batch(s, jobs);

  Output out;
  out.json = report_header("verify", o.dimension);
  out.text = header_text("verify", o.dimension);
  Json results = Json::array();
  int zero = 0;
  for (std::size_t k = 0; k < verdicts.size(); ++k) {
    const auto& v = verdicts[k];
    results.push_back(verdict_json(v, print_generator(selected[k].generator, r), selected[k].provenance, r));
    out.text += verdict_text(v, r);
    const bool ok = v.zero() && v.agreement.value_or(true);
    if (v.zero()) ++zero;
    if (!ok) out.exit = kVerificationFailure;
  }
  out.json["results"] = results;
  Json summary = Json::object();
  summary["generators"] = verdicts.size();
  summary["zero"] = zero;
  summary["nonzero"] = static_cast<int>(verdicts.size()) - zero;
  out.json["summary"] = summary;
  out.json["exit_status"] = out.exit;
  out.text += "summary: " + std::to_string(zero) + " zero, " +
              std::to_string(static_cast<int>(verdicts.size()) - zero) + " nonzero\n";
  return out;
}

Output cmd_deteq(const Options& o) {
  const auto r = jetspace::build_registry(o.dimension, split_commas(o.unknowns));
  const auto s = balance::build_system(o.dimension, r);
  const auto entries = catalog::build_catalog(o.dimension, r);
  const auto selected = select(o.generators, r, entries);

  Output out;
  out.json = report_header("deteq", o.dimension);
  out.text = header_text("deteq", o.dimension);
  Json results = Json::array();
  for (const auto& sel : selected) {
    const auto ds = deteq::determining_equations(s, sel.generator);
    const std::string dsl = print_generator(sel.generator, r);
    Json j = determining_json(ds, dsl, r);
    out.text += sel.generator.name() + " = " + dsl + "\n";
    for (const auto& e : ds.equations) {
      out.text += "  " + e.equation + " (rho^" + std::to_string(e.rho_power) + "): " +
                  std::to_string(e.conditions.size()) + " conditions\n";
      for (const auto& c : e.conditions) {
        out.text += "    [" + to_text(c.monomial, r.symbols()) + "] " + to_text(c.coefficient, r.symbols()) + " = 0\n";
      }
    }
    if (!r.unknowns().empty()) {
      auto solution = deteq::solve_unknowns(ds, r);
      Json sj = Json::object();
      sj["consistent"] = solution.has_value();
      Json values = Json::object();
      out.text += "  solution:";
      if (!solution) {
        out.text += " inconsistent";
      } else {
        for (const auto& u : r.unknowns()) {
          auto it = solution->find(u);
          std::string v = it == solution->end() ? "free" : to_text(it->second, r.symbols());
          values[r.name(u)] = v;
          out.text += " " + r.name(u) + "=" + v;
        }
      }
      out.text += "\n";
      sj["values"] = values;
      j["solution"] = sj;
    }
    results.push_back(j);
  }
  out.json["results"] = results;
  out.json["exit_status"] = out.exit;
  return out;
}

Output cmd_bracket(const Options& o) {
  const auto r = jetspace::build_registry(o.dimension);
  const auto entries = catalog::build_catalog(o.dimension, r);
  const auto basis = catalog::theorem_entries(entries);
  Output out;
  out.json = report_header("bracket", o.dimension);
  out.text = header_text("bracket", o.dimension);
  if (o.table) {
    auto table = catalog::structure_constants(basis, r);
    Json names = Json::array();
    for (const auto& n : table.names) names.push_back(n);
    Json rows = Json::array();
    for (std::size_t a = 0; a < table.cells.size(); ++a) {
      Json row = Json::array();
      out.text += "[" + table.names[a] + ", *]:";
      for (std::size_t b = 0; b < table.cells.size(); ++b) {
        const auto& cell = table.cells[a][b];
        std::string s = cell ? catalog::format_combination(*cell, table.names) : "outside span";
        row.push_back(cell ? Json(s) : Json(nullptr));
        out.text += "  " + table.names[b] + ": " + s + ";";
      }
      out.text += "\n";
      rows.push_back(row);
    }
    out.json["basis"] = names;
    out.json["table"] = rows;
    out.json["closed"] = table.closed();
    out.json["antisymmetric"] = table.antisymmetric();
    out.text += std::string("closed: ") + (table.closed() ? "yes" : "no") +
                "  antisymmetric: " + (table.antisymmetric() ? "yes" : "no") + "\n";
    if (!table.closed() || !table.antisymmetric()) out.exit = kVerificationFailure;
  } else {
    const auto selected = select(o.generators, r, entries);
    if (selected.size() != 2) throw Error("bracket needs exactly two generators or --table");
    auto br = liegen::bracket(selected[0].generator, selected[1].generator, r);
    auto combo = catalog::decompose(br, basis, r);
    std::vector<std::string> names;
    for (const auto& e : basis) names.push_back(e.name);
    out.json["left"] = selected[0].generator.name();
    out.json["right"] = selected[1].generator.name();
    out.json["bracket"] = print_generator(br, r);
    out.json["in_theorem_span"] = combo ? Json(catalog::format_combination(*combo, names)) : Json(nullptr);
    out.text += "[" + selected[0].generator.name() + ", " + selected[1].generator.name() +
                "] = " + print_generator(br, r) + "\n";
    out.text += "  in theorem span: " + (combo ? catalog::format_combination(*combo, names) : "no") + "\n";
  }
  out.json["exit_status"] = out.exit;
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Output cmd_transform(const Options& o) {
  const auto r = jetspace::build_registry(o.dimension);
  const auto s = balance::build_system(o.dimension, r);
  const auto entries = catalog::build_catalog(o.dimension, r);
  const auto selected = select(o.generators, r, entries);
  if (selected.size() != 1) throw Error("transform needs exactly one generator");
  const auto& g = selected.front().generator;

  liegen::FlowParameter param = liegen::symbolic_parameter(r);
  std::optional<double> numeric;
  if (!o.param.empty()) {
    symcore::Expr value = symcore::parse_expr(o.param, symcore::SymbolTable{});
    param.a = value;
    numeric = value.constant_value().get_d();
  }
  const auto flow = liegen::exponentiate(g.name(), r, param);
  const auto verdict = deteq::finite_check(s, flow);
  const auto fs = r.flow_symbols(0);

  Output out;
  out.json = report_header("transform", o.dimension);
  out.text = header_text("transform", o.dimension);
  out.json["generator"] = g.name();
  out.json["parameter"] = o.param.empty() ? "a" : o.param;
  Json images = Json::object();
  out.text += g.name() + " flow, parameter " + (o.param.empty() ? std::string("a") : o.param) + "\n";
  for (const auto& [coordinate, image] : flow.images()) {
    if (image == symcore::Expr::atom(coordinate)) continue;
    images[r.name(coordinate)] = to_text(image, r.symbols());
    out.text += "  " + r.name(coordinate) + " -> " + to_text(image, r.symbols()) + "\n";
  }
  out.json["moved_coordinates"] = images;
  Json eqs = Json::array();
  for (std::size_t k = 0; k < s.equations().size(); ++k) {
    const auto& eq = s.equations()[k];
    const auto& check = verdict.equations[k];
    Json row = Json::object();
    row["equation"] = eq.name;
    row["pulled_back"] = to_text(liegen::pull_back(eq.expr, flow, r), r.symbols());
    row["pass"] = check.pass;
    row["lambda"] = check.lambda ? Json(to_text(*check.lambda, r.symbols())) : Json(nullptr);
    out.text += eq.name + ": lambda = " + (check.lambda ? to_text(*check.lambda, r.symbols()) : "none");
    if (numeric && check.lambda) {
      std::map<symcore::Atom, double> point{
          {fs.a, *numeric}, {fs.exp_pos, std::exp(*numeric)}, {fs.exp_neg, std::exp(-*numeric)}};
      std::string v = format_double(symcore::evaluate(*check.lambda, point));
      row["lambda_value"] = v;
      out.text += " = " + v;
    }
    out.text += "\n  " + row["pulled_back"].get<std::string>() + "\n";
    eqs.push_back(row);
  }
  out.json["equations"] = eqs;
  out.json["pass"] = verdict.pass();
  if (!verdict.pass()) out.exit = kVerificationFailure;
  out.json["exit_status"] = out.exit;
  return out;
}

Output cmd_list(const Options& o) {
  const auto r = jetspace::build_registry(o.dimension);
  const auto entries = catalog::build_catalog(o.dimension, r);
  Output out;
  out.json = report_header("list", o.dimension);
  out.text = "# catalog, dim=" + std::to_string(o.dimension) + "\n";
  Json list = Json::array();
  for (const auto& e : entries) {
    Json j = Json::object();
    j["name"] = e.name;
    j["provenance"] = provenance_label(e);
    j["closed_form_flow"] = e.has_flow;
    j["dsl"] = print_generator(e.generator, r);
    list.push_back(j);
    out.text += "# " + provenance_label(e) + "\n" + e.name + " = " + print_generator(e.generator, r) + " ;\n";
  }
  out.json["entries"] = list;
  out.json["exit_status"] = out.exit;
  return out;
}

Output cmd_system_dump(const Options& o) {
  const auto r = jetspace::build_registry(o.dimension);
  const auto s = balance::build_system(o.dimension, r);
  Output out;
  out.json = report_header("system-dump", o.dimension);
  out.text = header_text("system-dump", o.dimension);
  Json eqs = Json::array();
  for (const auto& eq : s.equations()) {
    Json j = Json::object();
    j["name"] = eq.name;
    j["expr"] = to_text(eq.expr, r.symbols());
    eqs.push_back(j);
    out.text += eq.name + ": " + j["expr"].get<std::string>() + " = 0\n";
  }
  out.json["equations"] = eqs;
  out.json["dissipation"] = to_text(s.dissipation(), r.symbols());
  out.text += "Phi = " + to_text(s.dissipation(), r.symbols()) + "\n";
  Json principal = Json::object();
  for (const auto& [atom, value] : s.principal().direct) {
    principal[r.name(atom)] = to_text(value, r.symbols());
    out.text += r.name(atom) + " -> " + to_text(value, r.symbols()) + "\n";
  }
  for (const auto& [atom, value] : s.principal().rho_cleared) {
    principal["rho*" + r.name(atom)] = to_text(value, r.symbols());
    out.text += "rho*" + r.name(atom) + " -> " + to_text(value, r.symbols()) + "\n";
  }
  out.json["principal"] = principal;
  out.json["exit_status"] = out.exit;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivalence generators of simple nonpolar continuum media", "nonpolar"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub, bool with_gen) {
    sub->add_option("--dim", o.dimension, "spatial dimension")->required()->check(CLI::Range(1, 3));
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", o.out_path, "write the report to a file");
    if (with_gen) {
      sub->add_option("--gen", o.generators, "catalog name, all-theorem, all, @file.dsl or DSL text");
    }
  };
  auto* verify = app.add_subcommand("verify", "verify generators against the system");
  common(verify, true);
  auto* deteq_cmd = app.add_subcommand("deteq", "emit split determining equations");
  common(deteq_cmd, true);
  deteq_cmd->add_option("--unknowns", o.unknowns, "comma-separated unknown constants");
  auto* bracket = app.add_subcommand("bracket", "Lie brackets of generators");
  common(bracket, true);
  bracket->add_flag("--table", o.table, "full structure-constant table of the theorem span");
  auto* transform = app.add_subcommand("transform", "apply a closed-form flow to the system");
  common(transform, true);
  transform->add_option("--param", o.param, "rational group parameter");
  auto* list = app.add_subcommand("list", "print the catalog in DSL syntax");
  common(list, false);
  auto* system = app.add_subcommand("system", "system commands");
  auto* dump_cmd = system->add_subcommand("dump", "print the equations");
  common(dump_cmd, false);
  system->require_subcommand(1, 1);
  auto* system_dump = app.add_subcommand("system-dump", "print the equations");
  common(system_dump, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    Output result;
    if (verify->parsed()) {
      result = cmd_verify(o);
    } else if (deteq_cmd->parsed()) {
      result = cmd_deteq(o);
    } else if (bracket->parsed()) {
      result = cmd_bracket(o);
    } else if (transform->parsed()) {
      result = cmd_transform(o);
    } else if (list->parsed()) {
      result = cmd_list(o);
    } else {
      result = cmd_system_dump(o);
    }
    const std::string text = o.format == "json" ? dump(result.json) : result.text;
    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file) throw Error("cannot write '" + o.out_path + "'");
      file << text;
    }
    return result.exit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace nonpolar::cli
