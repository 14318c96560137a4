// Command-line front end and the JSON-lines result cache.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liequot/phi.hpp"

namespace liequot::cli {

inline constexpr const char* kCacheEnv = "LIEQUOT_CACHE";

enum class ExitCode : int { ok = 0, input_error = 1, budget_error = 2, internal_error = 3 };

// Append-only JSON-lines store of PhiRecords keyed by (hash, xtype, d, q).
// Later lines win over earlier ones for the same key.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path, std::ostream* warn = nullptr);

  // Stored record, or nullopt. Records with exact = false are only returned
  // when require_exact is false. Malformed lines are skipped with a warning.
  std::optional<phi::PhiRecord> lookup(const std::string& hash, const lie::LieClass& c,
                                       std::uint64_t q, bool require_exact = true) const;
  void store(const phi::PhiRecord& r) const;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ostream* warn_;
};

// Resolves --cache, then the environment variable; nullopt disables caching.
std::optional<std::filesystem::path> cache_path(const std::string& flag);

// Parses argv (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liequot::cli
