#include "dialectkit/manifest.hpp"

#include <openssl/evp.h>
#include <signal.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dialectkit/types.hpp"

namespace fs = std::filesystem;

namespace dialectkit {

namespace {

std::string digest_to_hex(const unsigned char* digest, unsigned int len) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
    throw Error("sha256 failed");
  return digest_to_hex(digest, len);
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for digest: " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  return digest_to_hex(digest, len);
}

void atomic_write(const fs::path& path, std::string_view content) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::create_directories(dir);
  std::mt19937_64 rng(std::random_device{}());
  const fs::path tmp = dir / (".tmp-" + std::to_string(rng()) + "-" + path.filename().string());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::add_input(const fs::path& p) {
  inputs.push_back({p.string(), sha256_file(p)});
}

void RunManifest::add_output(const fs::path& p) {
  outputs.push_back({p.string(), sha256_file(p)});
}

void append_manifest(const fs::path& out_dir, const RunManifest& manifest) {
  nlohmann::json j;
  j["stage"] = manifest.stage;
  j["config_hash"] = manifest.config_hash;
  j["tool_version"] = manifest.tool_version;
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  auto files = [](const std::vector<FileDigest>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : v) arr.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return arr;
  };
  j["inputs"] = files(manifest.inputs);
  j["outputs"] = files(manifest.outputs);

  fs::create_directories(out_dir);
  std::ofstream out(out_dir / "manifest.jsonl", std::ios::app);
  if (!out) throw Error("cannot append manifest in " + out_dir.string());
  out << j.dump() << '\n';
}

DirectoryLock::DirectoryLock(const fs::path& dir) {
  fs::create_directories(dir);
  lock_path_ = dir / ".dialectkit.lock";
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::FILE* f = std::fopen(lock_path_.c_str(), "wx");
    if (f) {
      std::fprintf(f, "%d\n", static_cast<int>(::getpid()));
      std::fclose(f);
      held_ = true;
      return;
    }
    // Lock exists: reclaim it only if the owning process is gone.
    std::ifstream in(lock_path_);
    int pid = 0;
    if (in >> pid && pid > 0 && ::kill(pid, 0) == 0)
      throw Error("output directory locked by running pid " + std::to_string(pid) + ": " +
                  lock_path_.string());
    std::error_code ec;
    fs::remove(lock_path_, ec);
  }
  throw Error("could not acquire lock: " + lock_path_.string());
}

DirectoryLock::~DirectoryLock() {
  if (held_) {
    std::error_code ec;
    fs::remove(lock_path_, ec);
  }
}

}  // namespace dialectkit
