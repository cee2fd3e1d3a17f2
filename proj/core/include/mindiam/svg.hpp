#pragma once

#include <optional>
#include <string>

#include "mindiam/imprecise.hpp"
#include "mindiam/instance_io.hpp"
#include "mindiam/mindcs.hpp"

namespace mindiam {

/// SVG 1.1 figure of an instance: one polygon/circle per region or candidate
/// point, the selection highlighted, and the diameter witness as a segment.
std::string render_svg(const ParsedInstance& instance, const std::optional<Selection>& selection);

}  // namespace mindiam
