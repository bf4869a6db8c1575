// Copyright 2026 The tactile-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tactile/util/manifest.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "tactile/util/errors.hpp"
#include "tactile/util/hash.hpp"

#ifndef TACTILE_GIT_DESCRIBE
#define TACTILE_GIT_DESCRIBE "unknown"
#endif

namespace tactile::util {

namespace fs = std::filesystem;

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  Fnv1a h;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.digest();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string git_describe() { return TACTILE_GIT_DESCRIBE; }

void RunManifest::write(const std::string& path) const {
  Config out;
  out.set("manifest.command", command);
  out.set("manifest.seed", std::to_string(seed));
  out.set("manifest.timestamp", timestamp);
  out.set("manifest.git_describe", git_describe);
  out.set("manifest.complete", complete ? "true" : "false");
  for (const auto& key : config.keys()) out.set("config." + key, config.get_string(key, ""));
  for (const auto& [file, hash] : artifacts) out.set("artifact." + file, hash);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(fmt::format("cannot write manifest '{}'", path));
  f << "# run manifest\n" << out.to_string();
  if (!f) throw IoError(fmt::format("cannot write manifest '{}'", path));
}

RunManifest RunManifest::read(const std::string& path) {
  const Config in = Config::load(path);
  RunManifest m;
  m.command = in.get_string("manifest.command", "");
  m.seed = static_cast<std::uint64_t>(in.get_int("manifest.seed", 0));
  m.timestamp = in.get_string("manifest.timestamp", "");
  m.git_describe = in.get_string("manifest.git_describe", "");
  m.complete = in.get_bool("manifest.complete", false);
  for (const auto& key : in.keys()) {
    if (key.rfind("config.", 0) == 0) {
      m.config.set(key.substr(7), in.get_string(key, ""), path);
    } else if (key.rfind("artifact.", 0) == 0) {
      m.artifacts[key.substr(9)] = in.get_string(key, "");
    }
  }
  if (m.command.empty()) throw ConfigError(fmt::format("{}: manifest has no command", path));
  return m;
}

void record_artifacts(RunManifest& manifest, const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().filename() == "manifest.txt" && entry.path().parent_path() == fs::path(dir)) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    // Image frames are summarized by the CSVs that index them.
    if (f.extension() == ".png") continue;
    manifest.artifacts[fs::relative(f, dir).generic_string()] = hex64(hash_file(f.string()));
  }
}

}  // namespace tactile::util
