#pragma once

namespace qcong {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr const char* kFixtureVersion = "1";

// Bumping this invalidates all on-disk coefficient caches.
inline constexpr int kFdCacheVersion = 1;

} // namespace qcong
