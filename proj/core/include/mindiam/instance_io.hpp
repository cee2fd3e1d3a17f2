#pragma once

#include <optional>
#include <string>

#include "mindiam/imprecise.hpp"
#include "mindiam/mindcs.hpp"

namespace mindiam {

/// A parsed instance file: exactly one of the two instance kinds is set.
struct ParsedInstance {
  std::string model;  // "indecisive" | "imprecise"
  int d = 2;
  std::optional<IndecisiveInstance> indecisive;
  std::optional<ImpreciseInstance> imprecise;
};

/// Parses the instance JSON. Schema:
///   {"model":"indecisive","d":2,"colors":[[[x,y],...],...]}
///   {"model":"imprecise","d":2,"regions":[[[x,y],...],...]}
/// For d > 2 imprecise instances each region is a list of half-spaces
/// [a_1,...,a_d,b] meaning a.x <= b. Unknown fields are rejected.
ParsedInstance parse_instance(const std::string& text);

/// Canonical serialization (12 significant digits, fixed field order).
std::string serialize_instance(const ParsedInstance& instance);

/// Formats a double with 12 significant digits.
std::string format_number(double v);

}  // namespace mindiam
