#pragma once

namespace recwalk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace recwalk
