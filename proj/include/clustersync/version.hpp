#pragma once

namespace clustersync {

inline constexpr const char* kToolName = "clustersync";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace clustersync
