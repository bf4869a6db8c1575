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

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace tactile::util {

// Formats a double with enough digits to round-trip and a stable textual
// form (used everywhere a CSV needs to be byte-reproducible).
std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  CsvWriter& cell(std::string_view s);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(std::size_t v) { return cell(static_cast<long long>(v)); }
  CsvWriter& empty();
  void end_row();
  void flush() { out_.flush(); }

  const std::string& path() const { return path_; }

 private:
  void sep();

  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
  std::string row_;
};

// Minimal reader: header + rows of string cells (no quoting support).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(std::string_view name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace tactile::util
