#pragma once

namespace caplab {

inline constexpr const char* kVersion = "1.0.0";

}
