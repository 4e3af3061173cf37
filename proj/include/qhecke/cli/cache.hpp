#pragma once

// Cache directory with a checksummed manifest. Prime tables and prime Gauss
// sums are built on a miss, and loaded data is spot-checked against a fresh
// recomputation of 1% of the records.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qhecke/gauss_sums.hpp"
#include "qhecke/zi/primes.hpp"

namespace qhecke::cli {

inline constexpr int kManifestVersion = 1;

/// FNV-1a over the file bytes.
inline std::uint64_t file_checksum(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::uint64_t h = 1469598103934665603ULL;
  char buf[1 << 14];
  while (is) {
    is.read(buf, sizeof buf);
    for (std::streamsize i = 0; i < is.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

struct manifest_entry {
  std::string kind;
  std::string path;  // relative to the cache directory
  std::uint64_t limit = 0;
  std::uint64_t checksum = 0;
};

/// "qhecke-manifest <version>" then "kind path limit checksum" lines.
class cache_manifest {
 public:
  explicit cache_manifest(std::filesystem::path dir) : dir_(std::move(dir)) { read(); }

  const std::filesystem::path& dir() const { return dir_; }
  int version() const { return version_; }

  const manifest_entry* find(const std::string& kind, std::uint64_t limit) const {
    auto it = entries_.find(key(kind, limit));
    return it == entries_.end() ? nullptr : &it->second;
  }

  void record(const std::string& kind, std::uint64_t limit, const std::string& rel) {
    entries_[key(kind, limit)] = {kind, rel, limit, file_checksum(dir_ / rel)};
    write();
  }

  /// Present, listed under the current version, and checksum matches.
  bool verified(const std::string& kind, std::uint64_t limit) const {
    const manifest_entry* e = find(kind, limit);
    if (!e || version_ != kManifestVersion) return false;
    return std::filesystem::exists(dir_ / e->path) && file_checksum(dir_ / e->path) == e->checksum;
  }

 private:
  static std::string key(const std::string& kind, std::uint64_t limit) { return kind + '/' + std::to_string(limit); }

  void read() {
    std::ifstream is(dir_ / "manifest.txt");
    std::string tag;
    if (!(is >> tag >> version_) || tag != "qhecke-manifest") {
      version_ = kManifestVersion;
      return;
    }
    if (version_ != kManifestVersion) return;
    manifest_entry e;
    while (is >> e.kind >> e.path >> e.limit >> e.checksum) entries_[key(e.kind, e.limit)] = e;
  }

  void write() const {
    std::filesystem::create_directories(dir_);
    std::ofstream os(dir_ / "manifest.txt", std::ios::trunc);
    require(static_cast<bool>(os), "cache: manifest not writable");
    os << "qhecke-manifest " << kManifestVersion << '\n';
    for (const auto& [k, e] : entries_) os << e.kind << ' ' << e.path << ' ' << e.limit << ' ' << e.checksum << '\n';
  }

  std::filesystem::path dir_;
  int version_ = kManifestVersion;
  std::map<std::string, manifest_entry> entries_;
};

/// QHECKE_CACHE_DIR, else the given default.
inline std::filesystem::path cache_dir(const std::string& fallback) {
  if (const char* env = std::getenv("QHECKE_CACHE_DIR"); env && *env) return env;
  return fallback;
}

struct cache_status {
  std::string kind;
  std::uint64_t limit = 0;
  bool loaded = false;       // true when served from disk
  bool regenerated = false;  // true when a stale or corrupt file was replaced
  std::size_t records = 0;
  std::size_t spot_checked = 0;
  double spot_max_error = 0.0;
  std::string warning;
};

/// Indices of a seeded 1% sample (at least one record).
inline std::vector<std::size_t> spot_sample(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx;
  if (n == 0) return idx;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const std::size_t k = std::max<std::size_t>(1, n / 100);
  for (std::size_t i = 0; i < k; ++i) idx.push_back(pick(rng));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

/// Primary primes of norm <= limit, build-or-load.
inline std::vector<gint> cached_primes(cache_manifest& m, std::uint64_t limit, cache_status* status = nullptr) {
  cache_status st{"primes", limit};
  const std::string rel = "primes_" + std::to_string(limit) + ".txt";
  std::vector<gint> out;
  bool ok = false;
  if (m.verified("primes", limit)) {
    if (auto loaded = load_prime_cache(m.dir() / rel, limit)) {
      out = std::move(*loaded);
      ok = true;
      for (std::size_t i : spot_sample(out.size(), limit)) {
        ++st.spot_checked;
        const gint& z = out[i];
        if (!is_primary(z) || !is_prime(z)) ok = false;
      }
    }
    if (!ok) {
      st.warning = "prime cache failed verification; regenerated";
      st.regenerated = true;
    }
  } else if (m.find("primes", limit)) {
    st.warning = "prime cache checksum or version mismatch; regenerated";
    st.regenerated = true;
  }
  if (ok) {
    st.loaded = true;
  } else {
    out = enumerate_primary_primes(limit);
    save_prime_cache(m.dir() / rel, limit, out);
    m.record("primes", limit, rel);
  }
  st.records = out.size();
  if (status) *status = st;
  return out;
}

/// Fills the global Gauss-sum memo for primary primes of norm <= limit, build-or-load.
inline void cached_gauss_sums(cache_manifest& m, std::uint64_t limit, cache_status* status = nullptr) {
  cache_status st{"gauss", limit};
  const std::string rel = "gauss_" + std::to_string(limit) + ".txt";
  auto& cache = global_gauss_cache();
  bool ok = false;
  if (m.verified("gauss", limit)) {
    gauss_cache staged;
    if (staged.load(m.dir() / rel)) {
      auto snap = staged.snapshot();
      ok = true;
      for (std::size_t i : spot_sample(snap.size(), limit ^ 0x9e3779b97f4a7c15ULL)) {
        ++st.spot_checked;
        auto fresh = prime_gauss_compute(snap[i].first);
        const double n = std::sqrt(static_cast<double>(snap[i].first.norm()));
        double e = static_cast<double>(std::max(std::abs(fresh.g4 - snap[i].second.g4),
                                                std::abs(fresh.g2 - snap[i].second.g2))) / n;
        st.spot_max_error = std::max(st.spot_max_error, e);
        if (!(e <= 1e-9)) ok = false;
      }
      if (ok) {
        for (const auto& [w, v] : snap) cache.put(w, v);
        st.records = snap.size();
      }
    }
    if (!ok) {
      st.warning = "gauss cache failed verification; regenerated";
      st.regenerated = true;
    }
  } else if (m.find("gauss", limit)) {
    st.warning = "gauss cache checksum or version mismatch; regenerated";
    st.regenerated = true;
  }
  if (ok) {
    st.loaded = true;
  } else {
    gauss_cache fresh;
    for (const auto& w : enumerate_primary_primes(limit)) fresh.get(w);
    fresh.save(m.dir() / rel);
    m.record("gauss", limit, rel);
    for (const auto& [w, v] : fresh.snapshot()) cache.put(w, v);
    st.records = fresh.size();
  }
  if (status) *status = st;
}

}  // namespace qhecke::cli
