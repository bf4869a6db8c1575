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
#include <ostream>

namespace tactile::cli {

// Exit codes returned by run().
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInterrupted = 130;

// Set asynchronously (e.g. from a SIGINT handler) to stop the running command.
// Partial outputs are kept and the manifest is marked incomplete.
std::atomic<bool>& interrupt_flag();

// Entry point for the `tactile` tool:
//   tactile <train|eval|collect|render|metrics|bench|regress|rerun> [options]
// Every command writes a run directory holding manifest.txt and its outputs.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tactile::cli
