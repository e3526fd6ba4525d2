#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "barw/exact_solver.hpp"

namespace barw {

inline constexpr int kCacheVersion = 1;

// Text table: header lines version=, lambda=, n=, u=, residual=, then one
// "x<TAB>log_phi" line per state with 17 significant digits.
void write_profile(std::ostream& out, const HittingProfile& profile);

// Throws CacheError naming `source_name` when the text is malformed.
HittingProfile read_profile(std::istream& in, const std::string& source_name);

std::filesystem::path cache_file(const std::filesystem::path& dir, double lambda, int n, int u);

void cache_store(const std::filesystem::path& dir, const HittingProfile& profile);

enum class CacheStatus { hit, miss, mismatch };

struct CacheProbe {
  CacheStatus status = CacheStatus::miss;
  std::optional<HittingProfile> profile;
  std::filesystem::path file;
  std::string reason;
};

// hit only when version, lambda, n, u match and the recorded residual is
// within tolerance; mismatch when the file exists but disagrees.
CacheProbe cache_probe(const std::filesystem::path& dir, double lambda, int n, int u);

// The cached profile, or nullopt on miss or mismatch.
std::optional<HittingProfile> cache_lookup(const std::filesystem::path& dir, double lambda, int n,
                                           int u);

}  // namespace barw
