#pragma once

#include <filesystem>

#include "qcong/modforms.hpp"

namespace qcong {

// $QCONG_CACHE_DIR, else $XDG_CACHE_HOME/qcong, else $HOME/.cache/qcong
std::filesystem::path default_cache_dir();

// Load f_d from the coefficient cache when a record with enough precision
// exists and its checksum verifies; otherwise build it and store the result
// atomically (write-temp-then-rename). Returns whether the cache was hit
// through `hit` when given.
PlusSpaceForm fd_cached(long d, long precision, const std::filesystem::path& dir,
                        bool* hit = nullptr);
PlusSpaceForm fd_cached(long d, long precision, bool* hit = nullptr);

} // namespace qcong
