// Copyright 2026 The sixdls Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIXDLS_CACHE_HPP_
#define SIXDLS_CACHE_HPP_

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "sixdls/io.hpp"
#include "sixdls/linearize.hpp"

namespace sixdls {

/// What a contact needs from a fit: the unit-force vertex set and the
/// unit-force normal wrench, both about the pressure center.
struct CachedContact {
  ConstraintSet constraints;
  Wrench6 normal_wrench = Wrench6::Zero();
};

inline constexpr const char* kCacheDirEnv = "SIXDLS_CACHE_DIR";

/// Keyed store of constraint sets. With a directory, entries persist as one
/// hex-float JSON file per key; otherwise they live in memory only.
/// Concurrent reads are safe; writes are serialized and atomic on disk.
class ConstraintCache {
 public:
  explicit ConstraintCache(std::string dir = "") : dir_(std::move(dir)) {}

  /// Directory from the environment override, else `fallback`.
  static std::string resolve_dir(const std::string& fallback) {
    if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
    return fallback;
  }

  const std::string& dir() const { return dir_; }

  std::string path_for(const std::string& key) const {
    return (std::filesystem::path(dir_) / (key + ".json")).string();
  }

  std::optional<CachedContact> get(const std::string& key) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memory_.find(key);
      if (it != memory_.end()) {
        ++hits_;
        return it->second;
      }
    }
    if (!dir_.empty()) {
      const std::string path = path_for(key);
      if (std::filesystem::exists(path)) {
        try {
          CachedContact c = read_entry(path, key);
          std::lock_guard<std::mutex> lock(mu_);
          memory_[key] = c;
          ++hits_;
          return c;
        } catch (const Error& e) {
          std::fprintf(stderr, "warning: ignoring unreadable cache entry %s (%s)\n", path.c_str(), e.what());
        }
      }
    }
    ++misses_;
    return std::nullopt;
  }

  void put(const std::string& key, const CachedContact& value) {
    std::lock_guard<std::mutex> lock(mu_);
    memory_[key] = value;
    if (!dir_.empty()) {
      Json j = constraints_to_json(value.constraints, key, FloatEncoding::Hex);
      j["normal_wrench"] = detail::array(value.normal_wrench, FloatEncoding::Hex);
      write_text_file_atomic(path_for(key), j.dump() + "\n");
    }
  }

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  static CachedContact read_entry(const std::string& path, const std::string& key) {
    const std::string text = read_text_file(path);
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw CorruptFileError(e.what());
    }
    CachedContact c;
    try {
      c.constraints = constraints_from_json(j, path);
      c.normal_wrench = detail::vec6(detail::require(j, "normal_wrench", path), path + ".normal_wrench");
    } catch (const FormatVersionError&) {
      throw;
    } catch (const ValidationError& e) {
      throw CorruptFileError(e.what());
    }
    if (!j.contains("key") || j.at("key") != key) throw CorruptFileError("key mismatch");
    return c;
  }

  std::string dir_;
  std::mutex mu_;
  std::map<std::string, CachedContact> memory_;
  std::atomic<std::size_t> hits_{0}, misses_{0};
};

}  // namespace sixdls

#endif  // SIXDLS_CACHE_HPP_
