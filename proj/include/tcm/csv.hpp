#pragma once

#include <string>
#include <vector>

#include "tcm/diagnostics.hpp"

namespace tcm::cli {

/// Shortest round-trippable decimal form of a double.
std::string format_double(double v);

/// Fixed diagnostics CSV schema, one row per emitted record.
const std::vector<std::string>& diagnostics_columns();
std::string diagnostics_header();
std::string diagnostics_row(const diag::DiagnosticsRecord& r);

} // namespace tcm::cli
