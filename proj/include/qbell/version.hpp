#pragma once

namespace qbell {

inline constexpr const char* kArtifactName = "qbell";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace qbell
