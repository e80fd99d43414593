#pragma once

#include <string_view>

namespace fsomc {

inline constexpr std::string_view kVersion = "0.1.0";

// Pinned generator identity, embedded in output metadata so sampled numbers
// are reproducible across runs and machines.
inline constexpr std::string_view kRngName = "mt19937_64+splitmix64-streams/v1";

}  // namespace fsomc
