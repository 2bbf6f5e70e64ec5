#pragma once

#include <cstdint>
#include <string>

#include "hecke/coefficients.hpp"

namespace hecke {

inline constexpr std::uint32_t kCacheVersion = 1;

/// FNV-1a over a byte range.
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 1469598103934665603ull);

/// Content key of (D, character index, format version).
std::uint64_t cache_key(std::uint64_t D, std::size_t char_index);

/// Directory from HECKE_CACHE_DIR, else ".hecke-cache".
std::string default_cache_dir();

/// File name inside a cache directory for this key.
std::string cache_path(const std::string& dir, std::uint64_t D, std::size_t char_index);

/// Writes header + little-endian float64 payload. Writes to a temporary name then renames.
void save_table(const CoefficientTable& t, const std::string& path);

/// Reads a table; throws DomainError on header mismatch and Error on a checksum failure.
CoefficientTable load_table(const std::string& path, std::uint64_t D, std::size_t char_index);

/// Loads from the cache when present, extends it if shorter than N, builds and stores otherwise.
/// Returns a table of exactly length N.
CoefficientTable cached_coefficients(const FieldData& field, const HeckeCharacter& psi, std::size_t char_index,
                                     std::uint64_t N, const std::string& dir);

}  // namespace hecke
