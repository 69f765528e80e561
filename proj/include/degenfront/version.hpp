#pragma once

namespace degenfront {

inline constexpr const char* kArtifactName = "degenfront";
inline constexpr const char* kArtifactVersion = "0.1.0";

} // namespace degenfront
