#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dialectkit {

inline constexpr std::string_view kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Writes to a temp file in the target directory, then renames into place.
/// A killed run never leaves a half-written output.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// RFC 3339 UTC timestamp.
std::string utc_timestamp();

struct FileDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string stage;
  std::string config_hash;
  std::string tool_version{kToolVersion};
  std::string started_at;
  std::string finished_at;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;

  void add_input(const std::filesystem::path& p);
  void add_output(const std::filesystem::path& p);
};

/// Appends one JSON line to <out_dir>/manifest.jsonl.
void append_manifest(const std::filesystem::path& out_dir, const RunManifest& manifest);

/// Advisory lock file guarding an output directory against concurrent runs.
/// Stale locks (dead pid) are reclaimed.
class DirectoryLock {
 public:
  explicit DirectoryLock(const std::filesystem::path& dir);
  ~DirectoryLock();

  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  std::filesystem::path lock_path_;
  bool held_ = false;
};

}  // namespace dialectkit
