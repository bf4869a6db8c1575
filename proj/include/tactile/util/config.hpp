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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tactile::util {

// Flat key-value configuration with dotted keys, e.g.
//
//   env.kind = edge_follow
//   ppo.gamma = 0.95
//   sensor.max_penetration_mm = 5
//
// '#' starts a comment. Values keep the line they were read from so type
// errors can be reported as "<source>:<line>: ...".
class Config {
 public:
  Config() = default;

  static Config parse(std::string_view text, const std::string& source = "<string>");
  static Config load(const std::string& path);

  // Parses "key=value"; used for command-line overrides.
  void set_assignment(std::string_view assignment, const std::string& source = "<flag>");
  void set(const std::string& key, const std::string& value, const std::string& origin = "<set>");
  void merge(const Config& other);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  void erase(const std::string& key) { entries_.erase(key); }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  std::optional<std::string> find(const std::string& key) const;

  std::vector<std::string> keys() const;
  // Keys not in `known`; lets commands reject typos.
  std::vector<std::string> unknown_keys(const std::vector<std::string>& known) const;
  // Throws ConfigError naming the origin of the first key not in `known`.
  void require_known(const std::vector<std::string>& known) const;

  // Sorted "key = value" lines; parse(to_string()) round-trips.
  std::string to_string() const;

 private:
  struct Entry {
    std::string value;
    std::string origin;
  };
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  std::map<std::string, Entry> entries_;
};

}  // namespace tactile::util
