#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nonpolar/catalog/catalog.hpp"
#include "nonpolar/deteq/determining.hpp"

namespace nonpolar::cli {

using Json = nlohmann::ordered_json;

/// Report envelope: tool, version, command, dimension, assumptions. Keys
/// keep insertion order, so identical inputs serialize to identical bytes.
Json report_header(const std::string& command, int dimension);

/// Pressure-equation reading, mu-ansatz, Z1 stress-derivative action and the
/// parametric set, embedded in every report.
Json assumptions();

Json verdict_json(const deteq::Verdict& v, const std::string& dsl, const std::string& provenance,
                  const jetspace::JetRegistry& r);
Json finite_json(const deteq::FiniteVerdict& f, const jetspace::JetRegistry& r);
Json determining_json(const deteq::DeterminingSystem& ds, const std::string& dsl,
                      const jetspace::JetRegistry& r);

std::string verdict_text(const deteq::Verdict& v, const jetspace::JetRegistry& r);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace nonpolar::cli
