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

#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tactile/cli/cli.hpp"
#include "tactile/envs/env.hpp"
#include "tactile/rl/policy.hpp"
#include "tactile/rl/ppo.hpp"
#include "tactile/rl/train.hpp"
#include "tactile/util/csv.hpp"
#include "tactile/util/manifest.hpp"
#include "tactile/util/rng.hpp"

namespace fs = std::filesystem;
using namespace tactile;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result tactile_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tactile");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("tactile_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

double summary_value(const std::string& path, const std::string& metric) {
  const auto t = util::read_csv(path);
  for (const auto& row : t.rows)
    if (row[0] == metric) return std::stod(row[1]);
  FAIL("metric missing: " << metric);
  return 0.0;
}

}  // namespace

TEST_CASE("render writes one tactile PNG per step and an episode CSV") {
  TempDir tmp;
  const auto r = tactile_cli({"render", "--env", "edge_follow", "--steps", "100", "-o", tmp / "run"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  int pngs = 0;
  for (const auto& e : fs::directory_iterator(tmp.path / "run" / "frames"))
    if (e.path().extension() == ".png") ++pngs;
  CHECK(pngs == 100);
  const auto csv = util::read_csv(tmp / "run/episode.csv");
  CHECK(csv.rows.size() == 100);
  CHECK(csv.column("reward") >= 0);
  CHECK(csv.column("x_mm") >= 0);
  const auto m = util::RunManifest::read(tmp / "run/manifest.txt");
  CHECK(m.complete);
  CHECK(m.command == "render");
  CHECK(m.artifacts.count("episode.csv") == 1);
}

TEST_CASE("train with zero steps leaves the initial checkpoint") {
  TempDir tmp;
  const auto r = tactile_cli({"train", "--steps", "0", "--seed", "7", "-o", tmp / "run"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(fs::exists(tmp / "run/checkpoint.bin"));
  CHECK(util::read_csv(tmp / "run/updates.csv").rows.empty());

  const auto env = envs::make_env(envs::EnvConfig::defaults(envs::EnvKind::kEdgeFollow));
  const rl::InputShape shape = rl::input_shape(env->obs_spec());
  rl::ActorCritic<float> fresh({}, shape, env->action_dim(), util::mix_seed(7, 1));
  rl::ActorCritic<float> loaded({}, shape, env->action_dim(), 12345);
  rl::load_checkpoint(tmp / "run/checkpoint.bin", loaded);
  CHECK(loaded.flat_weights() == fresh.flat_weights());
}

TEST_CASE("scripted edge rollout on the square stays within 2 mm of the outline") {
  TempDir tmp;
  const auto r = tactile_cli({"metrics", "--env", "edge_follow", "--set", "edge.shape=square", "--set",
                              "metrics.policy=oracle", "-o", tmp / "run"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const double mean = summary_value(tmp / "run/summary.csv", "mean_path_distance_mm");
  CHECK(mean >= 0.0);
  CHECK(mean < 2.0);
  CHECK(util::read_csv(tmp / "run/metrics.csv").rows.size() > 10);
}

TEST_CASE("bad configs exit nonzero naming file and line") {
  TempDir tmp;
  {
    std::ofstream f(tmp / "bad.cfg");
    f << "# comment\nenv.kind = edge_follow\nppo.gamma = not_a_number\n";
  }
  auto r = tactile_cli({"train", "-c", tmp / "bad.cfg", "-o", tmp / "run"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("bad.cfg:3:") != std::string::npos);
  CHECK(r.err.find("ppo.gamma") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp / "run/manifest.txt"));

  {
    std::ofstream f(tmp / "typo.cfg");
    f << "env.kind = edge_follow\nenv.max_step = 10\n";
  }
  r = tactile_cli({"render", "-c", tmp / "typo.cfg"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("typo.cfg:2:") != std::string::npos);

  {
    std::ofstream f(tmp / "syntax.cfg");
    f << "env.kind = edge_follow\n\n\nthis line has no equals\n";
  }
  r = tactile_cli({"render", "-c", tmp / "syntax.cfg"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("syntax.cfg:4:") != std::string::npos);

  r = tactile_cli({"render", "--set", "env.kind=nonexistent"});
  CHECK(r.code == cli::kExitUsage);
  r = tactile_cli({"frobnicate"});
  CHECK(r.code == cli::kExitUsage);
  r = tactile_cli({"bench", "--frames", "10"});
  CHECK(r.code == cli::kExitUsage);
}

TEST_CASE("command-line values override config files") {
  TempDir tmp;
  {
    std::ofstream f(tmp / "r.cfg");
    f << "render.steps = 50\nenv.max_steps = 20\n";
  }
  const auto r = tactile_cli({"render", "-c", tmp / "r.cfg", "--steps", "5", "-o", tmp / "run"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto m = util::RunManifest::read(tmp / "run/manifest.txt");
  CHECK(m.config.get_int("render.steps", 0) == 5);
  CHECK(m.config.get_int("env.max_steps", 0) == 20);
  CHECK(util::read_csv(tmp / "run/episode.csv").rows.size() == 5);
}

TEST_CASE("reruns from the manifest reproduce CSV outputs byte for byte") {
  TempDir tmp;
  struct Case {
    std::vector<std::string> args;
    std::vector<std::string> csvs;
  };
  const std::vector<Case> cases = {
      {{"render", "--env", "object_push", "--steps", "30", "--set", "render.policy=random", "--seed", "3"},
       {"episode.csv"}},
      {{"collect", "--task", "probe", "--set", "collect.n_train=12", "--set", "collect.n_val=6", "-j", "3"},
       {"train/poses.csv", "val/poses.csv", "dataset.csv"}},
      {{"eval", "--env", "object_balance", "--set", "eval.policy=random", "--episodes", "4", "-j", "2"},
       {"episodes.csv", "summary.csv"}},
      {{"metrics", "--env", "surface_follow", "--seed", "11"}, {"metrics.csv", "summary.csv"}},
  };
  int i = 0;
  for (const auto& c : cases) {
    CAPTURE(c.args[0]);
    const std::string first = tmp / ("run" + std::to_string(i));
    const std::string again = tmp / ("rerun" + std::to_string(i));
    ++i;
    auto args = c.args;
    args.push_back("-o");
    args.push_back(first);
    auto r = tactile_cli(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    r = tactile_cli({"rerun", first, "-o", again, "--verify"});
    CHECK_MESSAGE(r.code == 0, r.err);
    for (const auto& csv : c.csvs) {
      CAPTURE(csv);
      const auto a = slurp((fs::path(first) / csv).string());
      CHECK_FALSE(a.empty());
      CHECK(a == slurp((fs::path(again) / csv).string()));
    }
    const auto m = util::RunManifest::read((fs::path(again) / "manifest.txt").string());
    CHECK(m.complete);
    CHECK(m.command == c.args[0]);
  }
}

TEST_CASE("eval --from picks up the training run's checkpoint") {
  TempDir tmp;
  auto r = tactile_cli({"train", "--steps", "0", "--set", "train.eval_episodes=2", "-o", tmp / "train"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  r = tactile_cli({"eval", "--from", tmp / "train", "--episodes", "2", "-o", tmp / "eval"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto m = util::RunManifest::read(tmp / "eval/manifest.txt");
  CHECK(m.config.get_string("eval.policy", "") == "checkpoint");
  CHECK(fs::path(m.config.get_string("eval.checkpoint", "")).is_absolute());
  // Same seed, same weights, same episodes as the training run's step-0 evaluation.
  const auto train_eval = util::read_csv(tmp / "train/eval.csv");
  const double train_return = std::stod(train_eval.rows[0][train_eval.column("mean_return")]);
  CHECK(summary_value(tmp / "eval/summary.csv", "mean_return") == doctest::Approx(train_return).epsilon(1e-12));
}

TEST_CASE("interrupted runs keep partial outputs and an incomplete manifest") {
  TempDir tmp;
  cli::interrupt_flag().store(true);
  const auto r = tactile_cli({"render", "--steps", "20", "-o", tmp / "run"});
  cli::interrupt_flag().store(false);
  CHECK(r.code == cli::kExitInterrupted);
  const auto m = util::RunManifest::read(tmp / "run/manifest.txt");
  CHECK_FALSE(m.complete);
  CHECK(fs::exists(tmp / "run/episode.csv"));
}

TEST_CASE("run directories default under TACTILE_RUN_DIR and never collide") {
  TempDir tmp;
  ::setenv("TACTILE_RUN_DIR", (tmp / "root").c_str(), 1);
  auto a = tactile_cli({"render", "--steps", "1", "--seed", "4"});
  auto b = tactile_cli({"render", "--steps", "1", "--seed", "4"});
  ::unsetenv("TACTILE_RUN_DIR");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(fs::exists(tmp.path / "root" / "render-s4-000" / "manifest.txt"));
  CHECK(fs::exists(tmp.path / "root" / "render-s4-001" / "manifest.txt"));
  // An explicit directory that already holds a run is refused.
  const auto c = tactile_cli({"render", "--steps", "1", "-o", (tmp.path / "root" / "render-s4-000").string()});
  CHECK(c.code != 0);
}

TEST_CASE("bench reports finite rates and thread-independent frames") {
  TempDir tmp;
  const auto r = tactile_cli({"bench", "--resolution", "32", "--frames", "100", "-j", "3", "-o", tmp / "run"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto t = util::read_csv(tmp / "run/timing.csv");
  REQUIRE(t.rows.size() == 2);
  for (const auto& row : t.rows) {
    const double fps = std::stod(row[t.column("fps")]);
    CHECK(std::isfinite(fps));
    CHECK(fps > 0.0);
  }
  CHECK(util::read_csv(tmp / "run/frames.csv").rows.size() == 100);
}

TEST_CASE("ssim metrics compare matching image names") {
  TempDir tmp;
  REQUIRE(tactile_cli({"render", "--steps", "3", "-o", tmp / "a"}).code == 0);
  REQUIRE(tactile_cli({"render", "--steps", "3", "-o", tmp / "b"}).code == 0);
  const auto r = tactile_cli({"metrics", "--set", "metrics.mode=ssim", "--set", "metrics.images_a=" + (tmp / "a/frames"),
                              "--set", "metrics.images_b=" + (tmp / "b/frames"), "-o", tmp / "m"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(summary_value(tmp / "m/summary.csv", "images") == 3.0);
  CHECK(summary_value(tmp / "m/summary.csv", "mean_ssim") == 1.0);
}
