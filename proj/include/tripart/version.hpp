#pragma once

namespace tripart {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tripart
