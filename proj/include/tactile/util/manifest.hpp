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

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tactile/util/config.hpp"

namespace tactile::util {

// One per run directory. Holds everything needed to rerun the command.
struct RunManifest {
  std::string command;
  Config config;
  std::uint64_t seed = 0;
  std::string timestamp;
  std::string git_describe;
  bool complete = false;
  std::map<std::string, std::string> artifacts;  // relative path -> hex hash

  void write(const std::string& path) const;
  static RunManifest read(const std::string& path);
};

std::string utc_timestamp();
std::string git_describe();

// Hashes every regular file under `dir` (recursively, excluding the manifest
// itself) into manifest.artifacts.
void record_artifacts(RunManifest& manifest, const std::string& dir);

}  // namespace tactile::util
