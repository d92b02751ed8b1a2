#pragma once

/**
 * @file cache.hpp
 * @brief Content-addressed on-disk store for computed JSON results.
 *
 * The file name is the FNV-1a hash of a canonical key string; the full key
 * is stored next to the value and compared on lookup, so a hash collision
 * reads as a miss instead of a wrong answer. Writes go through a temporary
 * file and a rename, so concurrent readers never see a partial entry.
 */

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatpoints/linsys.hpp"
#include "fatpoints/serialize.hpp"

namespace fatpoints {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Canonical key for a computation on a scheme: command kind, field,
/// normalized points, multiplicities and the remaining parameters.
inline std::string cache_key(const std::string& kind, const FatPointScheme& scheme, const std::string& params) {
  std::ostringstream os;
  os << kind << '|' << scheme.field().to_string() << '|';
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    os << scheme.points()[i].to_string() << '^' << scheme.multiplicities()[i] << ';';
  }
  os << '|' << params;
  return os.str();
}

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<json> get(const std::string& key) const {
    std::ifstream in(path_for(key));
    if (!in) return std::nullopt;
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error&) {
      return std::nullopt;
    }
    if (!doc.contains("key") || doc["key"] != key || !doc.contains("value")) return std::nullopt;
    return doc["value"];
  }

  void put(const std::string& key, const json& value) const {
    const auto target = path_for(key);
    auto tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
      out << json{{"schema", kSchema}, {"key", key}, {"value", value}}.dump();
    }
    std::filesystem::rename(tmp, target);
  }

 private:
  std::filesystem::path path_for(const std::string& key) const {
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a64(key)));
    return dir_ / name;
  }

  std::filesystem::path dir_;
};

struct CacheMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Looks `key` up in `cache` (if any), computing and storing on a miss.
/// With `verify`, hits are recomputed and must match byte for byte.
template <typename Compute>
json cached(const ResultCache* cache, const std::string& key, bool verify, Compute&& compute) {
  if (!cache) return compute();
  if (auto hit = cache->get(key)) {
    if (verify) {
      const json fresh = compute();
      if (fresh.dump() != hit->dump()) throw CacheMismatch("cache entry differs from recomputation: " + key);
    }
    return *hit;
  }
  json value = compute();
  cache->put(key, value);
  return value;
}

}  // namespace fatpoints
