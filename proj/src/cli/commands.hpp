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

#include <atomic>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tactile/util/config.hpp"

namespace tactile::cli {

struct Context {
  util::Config config;  // fully resolved
  std::uint64_t seed = 0;
  std::string dir;
  std::ostream* out = nullptr;
  const std::atomic<bool>* stop = nullptr;
  bool interrupted = false;

  std::string path(const std::string& name) const;
  bool stopping() const { return stop != nullptr && stop->load(); }
};

struct Command {
  const char* name;
  const char* help;
  // Config key holding the worker count; reruns pin it to 1.
  const char* threads_key;
  // Rejects unknown keys and fills in every default.
  util::Config (*resolve)(const util::Config& user);
  void (*run)(Context& ctx);
};

const std::vector<Command>& commands();
const Command* find_command(const std::string& name);

// Outputs that depend on wall-clock time; rerun --verify skips them.
bool is_volatile_artifact(const std::string& relative_path);

// Keys a command that consumes a checkpoint inherits from the training run.
std::vector<std::string> inherited_keys();

}  // namespace tactile::cli
