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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <memory>
#include <set>

#include <fmt/format.h>

#include "tactile/data/dataset.hpp"
#include "tactile/data/metrics.hpp"
#include "tactile/envs/env.hpp"
#include "tactile/envs/tasks.hpp"
#include "tactile/render/image.hpp"
#include "tactile/render/tactile.hpp"
#include "tactile/rl/policy.hpp"
#include "tactile/rl/ppo.hpp"
#include "tactile/rl/supervised.hpp"
#include "tactile/rl/train.hpp"
#include "tactile/util/csv.hpp"
#include "tactile/util/errors.hpp"
#include "tactile/util/hash.hpp"
#include "tactile/util/parallel.hpp"
#include "tactile/util/rng.hpp"

namespace tactile::cli {

namespace fs = std::filesystem;

std::string Context::path(const std::string& name) const { return (fs::path(dir) / name).string(); }

namespace {

constexpr double kMm = 1e-3;

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

void put(util::Config& cfg, const std::string& key, const std::string& value) { cfg.set(key, value); }
void put(util::Config& cfg, const std::string& key, long long value) { cfg.set(key, std::to_string(value)); }
void put(util::Config& cfg, const std::string& key, bool value) { cfg.set(key, value ? "true" : "false"); }

util::Config env_and_net(const util::Config& user) {
  const auto env = envs::EnvConfig::from_config(user);
  env.validate();
  const auto net = rl::NetworkSpec::from_config(user);
  net.validate();
  const auto obs = envs::make_env(env)->obs_spec();
  if (obs.channels > 0) {
    int size = std::min(obs.height, obs.width);
    for (std::size_t i = 0; i < net.conv_filters.size(); ++i) {
      if (size < net.conv_kernels[i])
        throw ConfigError(fmt::format("env.image_size {} is too small for the conv stack (layer {} sees {} px, kernel {})",
                                      env.image_size, i + 1, size, net.conv_kernels[i]));
      size = (size - net.conv_kernels[i]) / net.conv_strides[i] + 1;
    }
  }
  util::Config out = env.to_config();
  net.to_config(out);
  return out;
}

int threads_of(const util::Config& cfg) {
  const long long t = cfg.get_int("run.threads", 1);
  if (t < 1) throw ConfigError("run.threads must be >= 1");
  return static_cast<int>(t);
}

void put_threads(util::Config& out, const util::Config& user) {
  put(out, "run.threads", static_cast<long long>(threads_of(user)));
}

void write_summary(const std::string& path, const std::vector<std::pair<std::string, double>>& rows) {
  util::CsvWriter csv(path, {"metric", "value"});
  for (const auto& [k, v] : rows) {
    csv.cell(k).cell(v);
    csv.end_row();
  }
}

// Action source shared by eval, render and metrics.
class Policy {
 public:
  Policy(const util::Config& cfg, const std::string& prefix, const envs::Env& env, std::uint64_t seed)
      : kind_(cfg.get_string(prefix + ".policy", "oracle")), rng_(util::mix_seed(seed, 0xAC7)) {
    if (kind_ == "checkpoint") {
      const auto ckpt = cfg.get_string(prefix + ".checkpoint", "");
      net_ = std::make_unique<rl::ActorCritic<float>>(rl::NetworkSpec::from_config(cfg),
                                                      rl::input_shape(env.obs_spec()), env.action_dim(), seed);
      rl::load_checkpoint(ckpt, *net_);
    }
  }

  std::vector<double> act(const envs::Env& env, const envs::Observation& obs) {
    if (net_) return rl::policy_action(*net_, obs);
    if (kind_ == "oracle") return env.oracle_action();
    std::vector<double> a(static_cast<std::size_t>(env.action_dim()), 0.0);
    if (kind_ == "random")
      for (double& x : a) x = rng_.uniform(-1.0, 1.0);
    return a;
  }

 private:
  std::string kind_;
  util::Rng rng_;
  std::unique_ptr<rl::ActorCritic<float>> net_;
};

void check_policy(const util::Config& cfg, const std::string& prefix) {
  const auto kind = cfg.get_string(prefix + ".policy", "oracle");
  if (kind == "checkpoint") {
    const auto ckpt = cfg.get_string(prefix + ".checkpoint", "");
    if (ckpt.empty()) throw ConfigError(fmt::format("{}.policy = checkpoint needs {}.checkpoint", prefix, prefix));
    return;
  }
  if (kind != "oracle" && kind != "random" && kind != "zero")
    throw ConfigError(fmt::format("unknown {}.policy '{}' (expected checkpoint, oracle, random or zero)", prefix, kind));
}

void put_policy(util::Config& out, const util::Config& user, const std::string& prefix, const std::string& fallback) {
  put(out, prefix + ".policy", user.get_string(prefix + ".policy", fallback));
  put(out, prefix + ".checkpoint", user.get_string(prefix + ".checkpoint", ""));
  check_policy(out, prefix);
}

// ---- train -----------------------------------------------------------------

util::Config resolve_train(const util::Config& user) {
  user.require_known(concat({envs::EnvConfig::known_keys(), rl::NetworkSpec::known_keys(),
                             rl::PPOConfig::known_keys(), rl::TrainConfig::known_keys()}));
  util::Config out = env_and_net(user);
  const auto ppo = rl::PPOConfig::from_config(user);
  ppo.validate();
  ppo.to_config(out);
  const auto tc = rl::TrainConfig::from_config(user);
  tc.validate();
  tc.to_config(out);
  return out;
}

void run_train(Context& ctx) {
  const auto env = envs::EnvConfig::from_config(ctx.config);
  const auto net = rl::NetworkSpec::from_config(ctx.config);
  const auto ppo = rl::PPOConfig::from_config(ctx.config);
  const auto tc = rl::TrainConfig::from_config(ctx.config);
  auto& out = *ctx.out;
  const auto result = rl::train(env, net, ppo, tc, ctx.seed, ctx.dir, ctx.stop,
                                [&](const std::string& line) { out << line << '\n' << std::flush; });
  ctx.interrupted = result.interrupted;
  write_summary(ctx.path("summary.csv"), {{"steps", double(result.steps)},
                                          {"updates", double(result.updates)},
                                          {"eval_mean_return", result.final_eval.mean_return},
                                          {"eval_success_rate", result.final_eval.success_rate},
                                          {"eval_mean_length", result.final_eval.mean_length}});
  out << fmt::format("trained {} steps, eval return {:.3f}, success {:.2f}\n", result.steps,
                     result.final_eval.mean_return, result.final_eval.success_rate);
}

// ---- eval ------------------------------------------------------------------

util::Config resolve_eval(const util::Config& user) {
  user.require_known(concat({envs::EnvConfig::known_keys(), rl::NetworkSpec::known_keys(),
                             {"eval.policy", "eval.checkpoint", "eval.episodes", "run.threads"}}));
  util::Config out = env_and_net(user);
  put_policy(out, user, "eval", "checkpoint");
  const long long episodes = user.get_int("eval.episodes", 10);
  if (episodes < 1) throw ConfigError("eval.episodes must be >= 1");
  put(out, "eval.episodes", episodes);
  put_threads(out, user);
  return out;
}

void run_eval(Context& ctx) {
  const auto env_cfg = envs::EnvConfig::from_config(ctx.config);
  const int episodes = static_cast<int>(ctx.config.get_int("eval.episodes", 10));
  const int threads = threads_of(ctx.config);
  const auto kind = ctx.config.get_string("eval.policy", "checkpoint");
  rl::EvalResult result;
  if (kind == "checkpoint") {
    auto probe = envs::make_env(env_cfg);
    rl::ActorCritic<float> net(rl::NetworkSpec::from_config(ctx.config), rl::input_shape(probe->obs_spec()),
                               probe->action_dim(), ctx.seed);
    rl::load_checkpoint(ctx.config.get_string("eval.checkpoint", ""), net);
    result = rl::evaluate(net, env_cfg, episodes, ctx.seed, threads);
  } else {
    result = rl::evaluate_baseline(rl::parse_baseline(kind), env_cfg, episodes, ctx.seed, threads);
  }
  rl::write_episodes_csv(ctx.path("episodes.csv"), result);
  std::vector<std::pair<std::string, double>> rows = {{"episodes", double(episodes)},
                                                      {"mean_return", result.mean_return},
                                                      {"success_rate", result.success_rate},
                                                      {"mean_length", result.mean_length}};
  for (const auto& [k, v] : result.mean_metrics) rows.emplace_back(k, v);
  write_summary(ctx.path("summary.csv"), rows);
  *ctx.out << fmt::format("{} episodes: return {:.4f}, success {:.2f}, length {:.1f}\n", episodes,
                          result.mean_return, result.success_rate, result.mean_length);
}

// ---- collect ---------------------------------------------------------------

util::Config resolve_collect(const util::Config& user) {
  user.require_known(concat({data::CollectionSpec::known_keys(), {"run.threads"}}));
  const auto spec = data::CollectionSpec::from_config(user);
  spec.validate();
  util::Config out;
  spec.to_config(out);
  put_threads(out, user);
  return out;
}

void run_collect(Context& ctx) {
  const auto spec = data::CollectionSpec::from_config(ctx.config);
  const auto summary = data::collect_dataset(spec, ctx.seed, ctx.dir, threads_of(ctx.config), ctx.stop);
  ctx.interrupted = summary.interrupted;
  util::CsvWriter csv(ctx.path("dataset.csv"), {"task", "n_train", "n_val", "content_hash"});
  csv.cell(data::to_string(spec.task)).cell(summary.n_train).cell(summary.n_val).cell(util::hex64(summary.content_hash));
  csv.end_row();
  *ctx.out << fmt::format("collected {} train / {} val samples, content hash {}\n", summary.n_train, summary.n_val,
                          util::hex64(summary.content_hash));
}

// ---- render ----------------------------------------------------------------

util::Config resolve_render(const util::Config& user) {
  user.require_known(concat({envs::EnvConfig::known_keys(), rl::NetworkSpec::known_keys(),
                             {"render.steps", "render.policy", "render.checkpoint", "render.visual"}}));
  util::Config out = env_and_net(user);
  const long long steps = user.get_int("render.steps", 100);
  if (steps < 1) throw ConfigError("render.steps must be >= 1");
  put(out, "render.steps", steps);
  put(out, "render.visual", user.get_bool("render.visual", false));
  put_policy(out, user, "render", "oracle");
  return out;
}

void run_render(Context& ctx) {
  const auto env_cfg = envs::EnvConfig::from_config(ctx.config);
  const int steps = static_cast<int>(ctx.config.get_int("render.steps", 100));
  const bool visual = ctx.config.get_bool("render.visual", false);
  auto env = envs::make_env(env_cfg);
  Policy policy(ctx.config, "render", *env, ctx.seed);
  fs::create_directories(ctx.path("frames"));

  std::vector<std::string> header = {"step", "episode", "episode_step", "reward", "done", "success",
                                     "x_mm", "y_mm", "z_mm", "rx_deg", "ry_deg", "rz_deg"};
  std::vector<std::string> metric_names;
  {
    auto probe = envs::make_env(env_cfg);
    probe->reset(ctx.seed);
    for (const auto& [k, v] : probe->evaluate().info.metrics) metric_names.push_back(k);
  }
  header.insert(header.end(), metric_names.begin(), metric_names.end());
  util::CsvWriter csv(ctx.path("episode.csv"), header);

  int episode = 0;
  auto obs = env->reset(util::mix_seed(ctx.seed, 0));
  for (int step = 0; step < steps; ++step) {
    if (ctx.stopping()) {
      ctx.interrupted = true;
      break;
    }
    const auto r = env->step(policy.act(*env, obs));
    obs = r.observation;
    render::write_png(ctx.path(fmt::format("frames/tactile_{:05d}.png", step)), env->render_tactile());
    if (visual) render::write_png(ctx.path(fmt::format("frames/visual_{:05d}.png", step)), env->render_visual());
    const auto& tcp = env->tcp_pose();
    const auto euler = tcp.euler_deg();
    csv.cell(step).cell(episode).cell(env->step_count()).cell(r.reward).cell(r.done || r.truncated ? 1 : 0);
    csv.cell(r.info.success ? 1 : 0);
    for (int i = 0; i < 3; ++i) csv.cell(tcp.position[i] / kMm);
    for (int i = 0; i < 3; ++i) csv.cell(euler[i]);
    for (const auto& k : metric_names) {
      auto it = r.info.metrics.find(k);
      if (it == r.info.metrics.end())
        csv.empty();
      else
        csv.cell(it->second);
    }
    csv.end_row();
    if (r.done || r.truncated) {
      ++episode;
      obs = env->reset(util::mix_seed(ctx.seed, static_cast<std::uint64_t>(episode)));
    }
  }
  *ctx.out << fmt::format("rendered {} frames over {} episode(s)\n", steps, episode + 1);
}

// ---- metrics ---------------------------------------------------------------

util::Config resolve_metrics(const util::Config& user) {
  user.require_known(concat({envs::EnvConfig::known_keys(), rl::NetworkSpec::known_keys(),
                             {"metrics.mode", "metrics.policy", "metrics.checkpoint", "metrics.episodes",
                              "metrics.images_a", "metrics.images_b"}}));
  const auto mode = user.get_string("metrics.mode", "rollout");
  util::Config out;
  if (mode == "ssim") {
    put(out, "metrics.images_a", user.get_string("metrics.images_a", ""));
    put(out, "metrics.images_b", user.get_string("metrics.images_b", ""));
    if (out.get_string("metrics.images_a", "").empty() || out.get_string("metrics.images_b", "").empty())
      throw ConfigError("metrics.mode = ssim needs metrics.images_a and metrics.images_b");
  } else if (mode == "rollout") {
    out = env_and_net(user);
    put_policy(out, user, "metrics", "oracle");
    const long long episodes = user.get_int("metrics.episodes", 1);
    if (episodes < 1) throw ConfigError("metrics.episodes must be >= 1");
    put(out, "metrics.episodes", episodes);
  } else {
    throw ConfigError(fmt::format("unknown metrics.mode '{}' (expected rollout or ssim)", mode));
  }
  put(out, "metrics.mode", mode);
  return out;
}

std::vector<geom::Vec3> flat(const std::vector<geom::Vec2>& pts) {
  std::vector<geom::Vec3> out;
  for (const auto& p : pts) out.emplace_back(p.x(), p.y(), 0.0);
  return out;
}

void run_ssim(Context& ctx) {
  const fs::path a = ctx.config.get_string("metrics.images_a", "");
  const fs::path b = ctx.config.get_string("metrics.images_b", "");
  std::vector<std::string> names;
  if (!fs::is_directory(a)) throw IoError(fmt::format("{}: not a directory", a.string()));
  for (const auto& e : fs::directory_iterator(a))
    if (e.path().extension() == ".png" && fs::exists(b / e.path().filename()))
      names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  if (names.empty()) throw IoError("no PNG names shared by metrics.images_a and metrics.images_b");
  util::CsvWriter csv(ctx.path("metrics.csv"), {"image", "ssim"});
  double sum = 0.0, lo = 1.0;
  for (const auto& n : names) {
    const double s = data::ssim(render::read_png((a / n).string()), render::read_png((b / n).string()));
    csv.cell(n).cell(s);
    csv.end_row();
    sum += s;
    lo = std::min(lo, s);
  }
  write_summary(ctx.path("summary.csv"),
                {{"images", double(names.size())}, {"mean_ssim", sum / names.size()}, {"min_ssim", lo}});
  *ctx.out << fmt::format("{} image pairs, mean SSIM {:.4f}\n", names.size(), sum / names.size());
}

// Per-step privileged rollout metrics. Edge follow and object push also
// report the distance from the tracked point (TCP or object) to the
// ground-truth path.
void run_rollout_metrics(Context& ctx) {
  const auto env_cfg = envs::EnvConfig::from_config(ctx.config);
  const int episodes = static_cast<int>(ctx.config.get_int("metrics.episodes", 1));
  auto env = envs::make_env(env_cfg);
  Policy policy(ctx.config, "metrics", *env, ctx.seed);
  const bool tracks = env_cfg.kind == envs::EnvKind::kEdgeFollow || env_cfg.kind == envs::EnvKind::kObjectPush;

  std::vector<std::string> metric_names;
  env->reset(rl::eval_episode_seed(ctx.seed, 0));
  for (const auto& [k, v] : env->evaluate().info.metrics) metric_names.push_back(k);
  std::vector<std::string> header = {"episode", "step", "reward", "x_mm", "y_mm", "z_mm", "object_x_mm", "object_y_mm"};
  if (tracks) header.push_back("path_distance_mm");
  header.insert(header.end(), metric_names.begin(), metric_names.end());
  util::CsvWriter csv(ctx.path("metrics.csv"), header);

  std::map<std::string, double> step_sums;
  long long total_steps = 0;
  double path_sum = 0.0, path_max = 0.0, ret_sum = 0.0, len_sum = 0.0, successes = 0.0;
  std::map<std::string, double> final_sums;
  int done_episodes = 0;
  for (int ep = 0; ep < episodes && !ctx.interrupted; ++ep) {
    auto obs = env->reset(rl::eval_episode_seed(ctx.seed, ep));
    std::vector<geom::Vec3> truth;
    bool closed = false;
    if (auto* edge = dynamic_cast<envs::EdgeFollowEnv*>(env.get())) {
      truth = flat(edge->outline_world(64));
      closed = env_cfg.edge_shape == envs::EdgeShape::kSquare;
    } else if (auto* push = dynamic_cast<envs::ObjectPushEnv*>(env.get())) {
      for (const auto& g : push->goals()) truth.emplace_back(g.position.x(), g.position.y(), 0.0);
    }
    double ret = 0.0;
    envs::StepResult r;
    while (true) {
      if (ctx.stopping()) {
        ctx.interrupted = true;
        break;
      }
      r = env->step(policy.act(*env, obs));
      obs = r.observation;
      ret += r.reward;
      ++total_steps;
      const auto& tcp = env->tcp_pose().position;
      const auto obj = env->object_pose().position;
      csv.cell(ep).cell(env->step_count()).cell(r.reward);
      for (int i = 0; i < 3; ++i) csv.cell(tcp[i] / kMm);
      csv.cell(obj.x() / kMm).cell(obj.y() / kMm);
      if (tracks) {
        const geom::Vec3 p = env_cfg.kind == envs::EnvKind::kEdgeFollow ? geom::Vec3(tcp.x(), tcp.y(), 0.0)
                                                                          : geom::Vec3(obj.x(), obj.y(), 0.0);
        const double d = data::trajectory_error({p}, truth, closed).mean;
        csv.cell(d / kMm);
        path_sum += d;
        path_max = std::max(path_max, d);
      }
      for (const auto& k : metric_names) {
        const double v = r.info.metrics.count(k) ? r.info.metrics.at(k) : std::nan("");
        csv.cell(v);
        step_sums[k] += v;
      }
      csv.end_row();
      if (r.done || r.truncated) break;
    }
    if (ctx.interrupted) break;
    ++done_episodes;
    ret_sum += ret;
    len_sum += env->step_count();
    successes += r.info.success ? 1.0 : 0.0;
    for (const auto& [k, v] : r.info.metrics) final_sums[k] += v;
  }

  std::vector<std::pair<std::string, double>> rows = {{"episodes", double(done_episodes)}, {"steps", double(total_steps)}};
  if (done_episodes > 0) {
    rows.emplace_back("mean_return", ret_sum / done_episodes);
    rows.emplace_back("mean_length", len_sum / done_episodes);
    rows.emplace_back("success_rate", successes / done_episodes);
    for (const auto& [k, v] : final_sums) rows.emplace_back("final_" + k, v / done_episodes);
  }
  if (total_steps > 0) {
    for (const auto& [k, v] : step_sums) rows.emplace_back("mean_" + k, v / total_steps);
    if (tracks) {
      rows.emplace_back("mean_path_distance_mm", path_sum / total_steps / kMm);
      rows.emplace_back("max_path_distance_mm", path_max / kMm);
    }
  }
  write_summary(ctx.path("summary.csv"), rows);
  for (const auto& [k, v] : rows) *ctx.out << fmt::format("{} = {}\n", k, util::format_double(v));
}

void run_metrics(Context& ctx) {
  if (ctx.config.get_string("metrics.mode", "rollout") == "ssim")
    run_ssim(ctx);
  else
    run_rollout_metrics(ctx);
}

// ---- bench -----------------------------------------------------------------

util::Config resolve_bench(const util::Config& user) {
  user.require_known({"bench.resolution", "bench.frames", "run.threads"});
  util::Config out;
  const long long res = user.get_int("bench.resolution", 128);
  const long long frames = user.get_int("bench.frames", 100);
  if (res < 16) throw ConfigError("bench.resolution must be >= 16");
  if (frames < 100) throw ConfigError("bench.frames must be >= 100");
  put(out, "bench.resolution", res);
  put(out, "bench.frames", frames);
  put(out, "run.threads", user.get_int("run.threads", util::hardware_threads()));
  threads_of(out);
  return out;
}

// A 5 mm sphere swept across the sensor at fixed indentation.
std::vector<geom::SdfShape> bench_scene(const data::CollectionSpec& spec, int frame, int frames) {
  data::Sample s;
  s.probe_radius = 0.005;
  const double t = frames > 1 ? double(frame) / (frames - 1) : 0.0;
  s.probe_center = geom::Vec2(-0.008 + 0.016 * t, 0.004 * std::sin(2.0 * M_PI * t));
  return data::sample_scene(spec, s);
}

void run_bench(Context& ctx) {
  data::CollectionSpec spec;
  spec.task = data::DatasetTask::kProbe;
  spec.sensor.resolution = static_cast<int>(ctx.config.get_int("bench.resolution", 128));
  const int frames = static_cast<int>(ctx.config.get_int("bench.frames", 100));
  const int threads = threads_of(ctx.config);
  const render::TactileSensor sensor(spec.sensor);
  std::vector<std::vector<geom::SdfShape>> scenes;
  for (int f = 0; f < frames; ++f) scenes.push_back(bench_scene(spec, f, frames));

  std::vector<std::uint64_t> sums(static_cast<std::size_t>(frames));
  auto render_all = [&](int workers) {
    const auto t0 = std::chrono::steady_clock::now();
    util::parallel_for(scenes.size(), workers, [&](std::size_t f) {
      const auto img = sensor.render(scenes[f], geom::Pose::identity());
      util::Fnv1a h;
      h.update(img.data.data(), img.data.size());
      sums[f] = h.digest();
    });
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const double single = render_all(1);
  const auto single_sums = sums;
  const double multi = render_all(threads);
  if (sums != single_sums) throw std::runtime_error("multi-thread renders differ from single-thread renders");

  util::CsvWriter frames_csv(ctx.path("frames.csv"), {"frame", "checksum"});
  for (int f = 0; f < frames; ++f) {
    frames_csv.cell(f).cell(util::hex64(sums[f]));
    frames_csv.end_row();
  }
  util::CsvWriter timing(ctx.path("timing.csv"), {"mode", "threads", "resolution", "frames", "seconds", "fps"});
  timing.cell("single").cell(1).cell(spec.sensor.resolution).cell(frames).cell(single).cell(frames / single);
  timing.end_row();
  timing.cell("multi").cell(threads).cell(spec.sensor.resolution).cell(frames).cell(multi).cell(frames / multi);
  timing.end_row();
  *ctx.out << fmt::format("{}x{}: {:.1f} fps single-thread, {:.1f} fps with {} threads\n", spec.sensor.resolution,
                          spec.sensor.resolution, frames / single, frames / multi, threads);
}

// ---- regress ---------------------------------------------------------------

util::Config resolve_regress(const util::Config& user) {
  user.require_known(concat({rl::SupervisedConfig::known_keys(), {"regress.dataset"}}));
  const auto sup = rl::SupervisedConfig::from_config(user);
  sup.validate();
  util::Config out;
  sup.to_config(out);
  const auto dataset = user.get_string("regress.dataset", "");
  if (dataset.empty()) throw ConfigError("regress.dataset is required");
  put(out, "regress.dataset", fs::absolute(dataset).lexically_normal().string());
  return out;
}

void run_regress(Context& ctx) {
  const auto dir = ctx.config.get_string("regress.dataset", "");
  const auto train = data::load_split(dir, data::Split::kTrain);
  const auto val = data::load_split(dir, data::Split::kVal);
  const auto cfg = rl::SupervisedConfig::from_config(ctx.config);
  auto& out = *ctx.out;
  const auto res = rl::supervised_edge_regression(train, val, cfg, ctx.seed,
                                                  [&](const std::string& line) { out << line << '\n' << std::flush; });
  util::CsvWriter pred(ctx.path("predictions.csv"), {"index", "r_mm", "r_pred_mm", "theta_rad", "theta_pred_rad"});
  for (std::size_t i = 0; i < res.pred_r_mm.size(); ++i) {
    pred.cell(i).cell(val.labels[i][0]).cell(res.pred_r_mm[i]).cell(val.labels[i][1]).cell(res.pred_theta_rad[i]);
    pred.end_row();
  }
  util::CsvWriter epochs(ctx.path("epochs.csv"), {"epoch", "train_loss", "val_mae_theta_rad"});
  for (std::size_t e = 0; e < res.epoch_loss.size(); ++e) {
    epochs.cell(e).cell(res.epoch_loss[e]).cell(res.epoch_val_mae_theta[e]);
    epochs.end_row();
  }
  write_summary(ctx.path("summary.csv"), {{"n_train", double(train.images.size())},
                                          {"n_val", double(val.images.size())},
                                          {"mae_r_mm", res.mae_r_mm},
                                          {"mae_theta_rad", res.mae_theta_rad},
                                          {"baseline_mae_r_mm", res.baseline_mae_r_mm},
                                          {"baseline_mae_theta_rad", res.baseline_mae_theta_rad}});
  out << fmt::format("MAE r {:.4f} mm, theta {:.4f} rad\n", res.mae_r_mm, res.mae_theta_rad);
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"train", "Train a PPO policy", "train.threads", resolve_train, run_train},
      {"eval", "Evaluate a checkpoint or baseline policy", "run.threads", resolve_eval, run_eval},
      {"collect", "Collect a tactile image dataset", "run.threads", resolve_collect, run_collect},
      {"render", "Roll out a policy and save tactile frames", nullptr, resolve_render, run_render},
      {"metrics", "Compute rollout or image-similarity metrics", nullptr, resolve_metrics, run_metrics},
      {"bench", "Measure tactile rendering throughput", "run.threads", resolve_bench, run_bench},
      {"regress", "Supervised edge pose regression on a dataset", nullptr, resolve_regress, run_regress},
  };
  return table;
}

const Command* find_command(const std::string& name) {
  for (const auto& c : commands())
    if (name == c.name) return &c;
  return nullptr;
}

bool is_volatile_artifact(const std::string& relative_path) { return relative_path == "timing.csv"; }

std::vector<std::string> inherited_keys() {
  return concat({envs::EnvConfig::known_keys(), rl::NetworkSpec::known_keys()});
}

}  // namespace tactile::cli
