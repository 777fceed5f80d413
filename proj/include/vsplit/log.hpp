#pragma once

#include <string>

namespace vsplit {

/// Verbosity from the VSPLIT_LOG environment variable:
/// unset/"0" silent, "info"/"1" progress, "debug"/"2" per-stage detail.
int log_level();

void log_info(const std::string& msg);
void log_debug(const std::string& msg);

} // namespace vsplit
