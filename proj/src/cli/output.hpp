#pragma once

#include "rmm/cli.hpp"

#include <fmt/format.h>
#include <functional>
#include <ostream>
#include <string>

namespace rmm::cli::detail {

// Round-trip precision, identical across runs.
inline std::string num(double v) { return fmt::format("{:.17g}", v); }

/// Sends `text` to --out when given, else to `out`. Files are written in
/// binary mode so line endings stay LF.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text);

/// Runs a command body, mapping input and parameter errors to exit code 2.
int guarded(std::ostream& err, const std::function<int()>& body);

}  // namespace rmm::cli::detail
