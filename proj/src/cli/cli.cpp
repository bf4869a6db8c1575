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

#include "tactile/cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "tactile/util/errors.hpp"
#include "tactile/util/manifest.hpp"

namespace tactile::cli {

namespace fs = std::filesystem;

std::atomic<bool>& interrupt_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

namespace {

constexpr const char* kManifest = "manifest.txt";

struct CommonOptions {
  std::vector<std::string> config_files;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<int> threads;
  std::string from;
  // Dedicated flags, applied after --set.
  std::vector<std::pair<std::string, std::string>> shortcuts;
};

std::string run_root() {
  const char* env = std::getenv("TACTILE_RUN_DIR");
  return env != nullptr && *env != '\0' ? env : "runs";
}

std::string make_run_dir(const std::string& out, const std::string& command, std::uint64_t seed) {
  fs::path dir;
  if (!out.empty()) {
    dir = out;
    if (fs::exists(dir / kManifest))
      throw IoError(fmt::format("{}: already holds a run manifest", dir.string()));
  } else {
    const fs::path root = run_root();
    for (int i = 0;; ++i) {
      dir = root / fmt::format("{}-s{}-{:03d}", command, seed, i);
      if (!fs::exists(dir)) break;
    }
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("{}: cannot create run directory: {}", dir.string(), ec.message()));
  return dir.string();
}

util::Config gather_config(const Command& cmd, const CommonOptions& opt) {
  util::Config cfg;
  if (!opt.from.empty()) {
    const auto src = util::RunManifest::read((fs::path(opt.from) / kManifest).string());
    for (const auto& key : inherited_keys())
      if (auto v = src.config.find(key)) cfg.set(key, *v, src.command + " run " + opt.from);
    const std::string prefix = cmd.name;
    cfg.set(prefix + ".policy", "checkpoint", "--from");
    cfg.set(prefix + ".checkpoint", fs::absolute(fs::path(opt.from) / "checkpoint.bin").lexically_normal().string(),
            "--from");
  }
  for (const auto& file : opt.config_files) cfg.merge(util::Config::load(file));
  for (const auto& s : opt.sets) cfg.set_assignment(s, "--set " + s);
  for (const auto& [k, v] : opt.shortcuts) cfg.set(k, v, "--" + k);
  if (opt.threads) {
    if (cmd.threads_key == nullptr)
      throw ConfigError(fmt::format("'{}' does not take --threads", cmd.name));
    cfg.set(cmd.threads_key, std::to_string(*opt.threads), "--threads");
  }
  return cfg;
}

// Runs one command into a fresh directory. Returns the exit code.
int execute(const Command& cmd, const util::Config& resolved, std::uint64_t seed, const std::string& out_dir,
            std::ostream& out, std::ostream& err, std::string* dir_out = nullptr) {
  Context ctx;
  ctx.config = resolved;
  ctx.seed = seed;
  ctx.dir = make_run_dir(out_dir, cmd.name, seed);
  ctx.out = &out;
  ctx.stop = &interrupt_flag();
  if (dir_out != nullptr) *dir_out = ctx.dir;

  util::RunManifest manifest;
  manifest.command = cmd.name;
  manifest.config = resolved;
  manifest.seed = seed;
  manifest.timestamp = util::utc_timestamp();
  manifest.git_describe = util::git_describe();
  const auto manifest_path = (fs::path(ctx.dir) / kManifest).string();
  manifest.write(manifest_path);
  out << "run directory: " << ctx.dir << '\n';

  int code = kExitOk;
  try {
    cmd.run(ctx);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    code = kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kExitFailure;
  }
  if (code == kExitOk && (ctx.interrupted || interrupt_flag().load())) {
    err << "interrupted; partial outputs kept in " << ctx.dir << '\n';
    code = kExitInterrupted;
  }
  util::record_artifacts(manifest, ctx.dir);
  manifest.complete = code == kExitOk;
  manifest.write(manifest_path);
  return code;
}

int rerun(const std::string& source, const std::string& out_dir, bool verify, std::ostream& out,
          std::ostream& err) {
  const auto original = util::RunManifest::read((fs::path(source) / kManifest).string());
  const Command* cmd = find_command(original.command);
  if (cmd == nullptr) throw ConfigError(fmt::format("{}: unknown command '{}'", source, original.command));
  if (!original.complete) err << "warning: " << source << " is marked incomplete\n";
  util::Config cfg = original.config;
  if (cmd->threads_key != nullptr) cfg.set(cmd->threads_key, "1", "rerun");
  std::string dir;
  const int code = execute(*cmd, cmd->resolve(cfg), original.seed, out_dir, out, err, &dir);
  if (code != kExitOk || !verify) return code;

  const auto fresh = util::RunManifest::read((fs::path(dir) / kManifest).string());
  int mismatches = 0, compared = 0;
  for (const auto& [path, hash] : original.artifacts) {
    if (is_volatile_artifact(path)) continue;
    ++compared;
    auto it = fresh.artifacts.find(path);
    if (it == fresh.artifacts.end()) {
      err << "missing: " << path << '\n';
      ++mismatches;
    } else if (it->second != hash) {
      err << "differs: " << path << '\n';
      ++mismatches;
    }
  }
  for (const auto& [path, hash] : fresh.artifacts)
    if (!is_volatile_artifact(path) && original.artifacts.count(path) == 0) {
      err << "unexpected: " << path << '\n';
      ++mismatches;
    }
  out << fmt::format("verified {} artifacts, {} mismatches\n", compared, mismatches);
  return mismatches == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tactile sensing simulation, reinforcement learning and datasets", "tactile"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string env_kind, task;
  std::optional<long long> steps, resolution, frames, episodes;
  std::string rerun_source;
  bool verify = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", opt.config_files, "Config file(s) of 'key = value' lines");
    sub->add_option("-s,--set", opt.sets, "Override one key: --set key=value (repeatable)");
    sub->add_option("--seed", opt.seed, "Seed for every random stream")->capture_default_str();
    sub->add_option("-o,--out", opt.out, "Run directory (default: $TACTILE_RUN_DIR/<command>-s<seed>-NNN)");
  };
  for (const auto& cmd : commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    add_common(sub);
    if (cmd.threads_key != nullptr) sub->add_option("-j,--threads", opt.threads, "Worker threads");
    const std::string name = cmd.name;
    if (name == "train" || name == "eval" || name == "render" || name == "metrics")
      sub->add_option("--env", env_kind, "Environment (sets env.kind)");
    if (name == "eval" || name == "render" || name == "metrics")
      sub->add_option("--from", opt.from, "Use the checkpoint, env and network of a training run");
    if (name == "render") sub->add_option("--steps", steps, "Frames to render (render.steps)");
    if (name == "train") sub->add_option("--steps", steps, "Environment steps (train.total_steps)");
    if (name == "eval") sub->add_option("--episodes", episodes, "Episodes (eval.episodes)");
    if (name == "metrics") sub->add_option("--episodes", episodes, "Episodes (metrics.episodes)");
    if (name == "collect") sub->add_option("--task", task, "edge, surface or probe (collect.task)");
    if (name == "bench") {
      sub->add_option("--resolution", resolution, "Image size (bench.resolution)");
      sub->add_option("--frames", frames, "Frames per measurement (bench.frames)");
    }
  }
  auto* rerun_cmd = app.add_subcommand("rerun", "Repeat a run from its manifest, single-threaded");
  rerun_cmd->add_option("run_dir", rerun_source, "Run directory holding manifest.txt")->required();
  rerun_cmd->add_option("-o,--out", opt.out, "Run directory for the repeat");
  rerun_cmd->add_flag("--verify", verify, "Compare artifact hashes with the original run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (rerun_cmd->parsed()) return rerun(rerun_source, opt.out, verify, out, err);
    const Command* cmd = nullptr;
    for (const auto& c : commands())
      if (app.got_subcommand(c.name)) cmd = &c;
    const std::string name = cmd->name;
    auto& sc = opt.shortcuts;
    if (!env_kind.empty()) sc.emplace_back("env.kind", env_kind);
    if (!task.empty()) sc.emplace_back("collect.task", task);
    if (steps) sc.emplace_back(name == "train" ? "train.total_steps" : "render.steps", std::to_string(*steps));
    if (episodes) sc.emplace_back(name + ".episodes", std::to_string(*episodes));
    if (resolution) sc.emplace_back("bench.resolution", std::to_string(*resolution));
    if (frames) sc.emplace_back("bench.frames", std::to_string(*frames));
    const util::Config resolved = cmd->resolve(gather_config(*cmd, opt));
    return execute(*cmd, resolved, opt.seed, opt.out, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace tactile::cli
