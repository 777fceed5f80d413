#pragma once

namespace vsplit {

inline constexpr const char* kVersion = "0.1.0";

} // namespace vsplit
