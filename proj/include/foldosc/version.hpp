#pragma once

namespace foldosc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace foldosc
