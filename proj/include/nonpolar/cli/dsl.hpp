#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nonpolar/liegen/generator.hpp"

namespace nonpolar::cli {

using jetspace::JetRegistry;
using liegen::GeneratorSpec;

/// Generator DSL. A generator is a sum of `coefficient * d/d<coord>` terms:
///
///   generator   = term { ("+" | "-") term } ;
///   term        = [ "-" ] factor { ("*" | "/") factor } ;
///   factor      = number | name | "d/d" name | "(" generator ")"
///                 | factor "^" integer ;
///
/// Every additive term must carry exactly one `d/d<coord>` factor and
/// <coord> must be one of t, x<i>, u<k>, p, rho, Pi<i><j>, G, H. Names follow
/// the registry grammar. `#` starts a comment.
GeneratorSpec parse_generator(std::string_view src, const JetRegistry& r,
                              const std::string& name = "custom", int first_line = 1,
                              int first_column = 1);

/// Inverse of parse_generator, terms in base-coordinate order.
std::string print_generator(const GeneratorSpec& g, const JetRegistry& r);

/// A DSL document: definitions `name = generator ;`. A document holding a
/// single generator without `name =` and `;` is also accepted.
std::vector<GeneratorSpec> parse_document(std::string_view text, const JetRegistry& r);

std::string print_document(const std::vector<GeneratorSpec>& generators, const JetRegistry& r);

}  // namespace nonpolar::cli
