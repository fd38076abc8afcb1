#pragma once

namespace mfgas {

inline constexpr const char* kVersion = "0.1.0";

}
