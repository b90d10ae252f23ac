#pragma once

#include <optional>
#include <string>

#include "glq/chartable.hpp"

namespace glq {

inline constexpr int kCacheFormatVersion = 1;

/// Path of the cache file for (q, n) under dir.
std::string cache_file_path(const std::string& dir, std::uint64_t q, int n);

/// Serialize a table (exact cyclotomic data + metadata, never the complex
/// lifts) to the cache directory.  Creates the directory if needed.
void save_table(const CharacterTable& table, const std::string& dir);

/// Load a table if a compatible cache file exists.  Returns nullptr on
/// missing file; throws Error on version mismatch or corrupted payload
/// after deleting nothing (the caller decides to rebuild).
std::unique_ptr<CharacterTable> load_table(const Field& F, int n, const std::string& dir);

}  // namespace glq
