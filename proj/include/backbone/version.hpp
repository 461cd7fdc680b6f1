#pragma once

namespace backbone {
inline constexpr const char* kVersion = "0.1.0";
}
