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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "tactile/rl/grad_check.hpp"
#include "tactile/rl/ppo.hpp"
#include "tactile/util/errors.hpp"

using namespace tactile;
using namespace tactile::rl;

namespace {

// Explicit double loop over discounted TD residuals.
std::vector<double> gae_oracle(const std::vector<double>& r, const std::vector<double>& v,
                               const std::vector<std::uint8_t>& d, double boot, double g, double l) {
  const std::size_t n = r.size();
  std::vector<double> a(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double weight = 1.0;
    for (std::size_t k = t; k < n; ++k) {
      const double next = k + 1 < n ? v[k + 1] : boot;
      const double delta = r[k] + (d[k] ? 0.0 : g * next) - v[k];
      a[t] += weight * delta;
      if (d[k]) break;
      weight *= g * l;
    }
  }
  return a;
}

render::ByteImage ring_image(int n) {
  render::ByteImage img(n, n, 1, 0);
  const double c = (n - 1) / 2.0, r = n / 2.0 - 1.5;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::fabs(std::hypot(i - c, j - c) - r) < 1.0) img.at(i, j) = 255;
  return img;
}

NetworkSpec reduced_spec() {
  NetworkSpec s;
  s.conv_filters = {4, 6, 6};
  s.conv_kernels = {4, 3, 3};
  s.conv_strides = {2, 2, 1};
  s.conv_features = 12;
  s.state_layers = {8};
  s.head_layers = {10, 10};
  return s;
}

}  // namespace

TEST_CASE("gae matches the brute-force oracle on random sequences") {
  util::Rng rng(2024);
  double worst = 0.0;
  for (int seq = 0; seq < 1000; ++seq) {
    const int n = rng.uniform_int(1, 60);
    std::vector<double> r(n), v(n);
    std::vector<std::uint8_t> d(n);
    for (int i = 0; i < n; ++i) {
      r[i] = rng.uniform(-2.0, 2.0);
      v[i] = rng.uniform(-3.0, 3.0);
      d[i] = rng.uniform(0.0, 1.0) < 0.1;
    }
    const double boot = rng.uniform(-3.0, 3.0);
    const double g = rng.uniform(0.5, 1.0), l = rng.uniform(0.0, 1.0);
    const auto res = gae(r, v, d, boot, g, l);
    const auto ref = gae_oracle(r, v, d, boot, g, l);
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, std::fabs(res.advantages[i] - ref[i]));
      CHECK(res.returns[i] == doctest::Approx(res.advantages[i] + v[i]).epsilon(1e-15));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("gae worked examples") {
  std::vector<std::uint8_t> term = {1};
  auto one = gae(std::vector<double>{1.0}, std::vector<double>{0.0}, term, 5.0, 0.95, 0.9);
  CHECK(one.advantages[0] == 1.0);
  CHECK(one.returns[0] == 1.0);

  std::vector<std::uint8_t> d2 = {0, 1};
  auto two = gae(std::vector<double>{1.0, 1.0}, std::vector<double>{0.5, 0.5}, d2, 0.0, 0.95, 0.9);
  CHECK(two.advantages[0] == doctest::Approx(1.4025).epsilon(1e-14));

  util::Rng rng(1);
  std::vector<double> r(20), v(20);
  std::vector<std::uint8_t> d(20, 0);
  for (int i = 0; i < 20; ++i) r[i] = rng.normal(), v[i] = rng.normal();
  auto td = gae(r, v, d, 0.3, 0.9, 0.0);
  for (int i = 0; i < 20; ++i) {
    const double next = i + 1 < 20 ? v[i + 1] : 0.3;
    CHECK(td.advantages[i] == r[i] + 0.9 * next - v[i]);
  }
  CHECK_THROWS_AS(gae(r, std::vector<double>(3), d, 0.0, 0.9, 0.9), std::invalid_argument);
}

TEST_CASE("clipped objective case table") {
  const double eps = 0.2;
  CHECK(clipped_objective(1.5, 1.0, eps) == 1.2);
  CHECK(clip_active(1.5, 1.0, eps));
  CHECK(clipped_objective(0.5, -2.0, eps) == 0.8 * -2.0);
  CHECK(clip_active(0.5, -2.0, eps));
  // Quadrants where the unclipped term is the minimum.
  CHECK(clipped_objective(0.5, 1.0, eps) == 0.5);
  CHECK_FALSE(clip_active(0.5, 1.0, eps));
  CHECK(clipped_objective(1.5, -1.0, eps) == -1.5);
  CHECK_FALSE(clip_active(1.5, -1.0, eps));
  // Inside the trust region both branches agree.
  CHECK(clipped_objective(1.1, 3.0, eps) == 1.1 * 3.0);
  CHECK_FALSE(clip_active(1.1, 3.0, eps));
  CHECK(clipped_objective(1.0, 0.7, eps) == 0.7);
  CHECK(clipped_objective(2.0, 0.0, eps) == 0.0);
  CHECK_FALSE(clip_active(2.0, 0.0, eps));
}

TEST_CASE("clipped objective is pessimistic") {
  util::Rng rng(77);
  for (int i = 0; i < 10000; ++i) {
    const double ratio = std::exp(rng.uniform(-2.0, 2.0)), a = rng.uniform(-5.0, 5.0);
    const double obj = clipped_objective(ratio, a, 0.2);
    CHECK(obj <= ratio * a);
  }
}

TEST_CASE("normalized advantages are standardized and positively proportional") {
  util::Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(2, 500);
    std::vector<double> raw(n);
    const double shift = rng.uniform(-10, 10), scale = std::pow(10.0, rng.uniform(-2, 2));
    for (double& a : raw) a = shift + scale * rng.normal();
    auto norm = raw;
    normalize_advantages(norm);
    double m = 0.0, s2 = 0.0;
    for (double a : norm) m += a;
    m /= n;
    for (double a : norm) s2 += (a - m) * (a - m);
    CHECK(std::fabs(m) < 1e-6);
    CHECK(std::sqrt(s2 / n) == doctest::Approx(1.0).epsilon(1e-6));
    // Centered raw values map to normalized ones by one positive factor.
    double rm = 0.0;
    for (double a : raw) rm += a;
    rm /= n;
    const double k = (raw[0] - rm) / norm[0];
    CHECK(k > 0.0);
    for (int i = 0; i < n; ++i) CHECK((raw[i] - rm) == doctest::Approx(k * norm[i]).epsilon(1e-9));
  }
}

TEST_CASE("rollout buffer computes advantages only when full") {
  RolloutBuffer buf(2, 3);
  CHECK_THROWS_AS(buf.finish({0.0, 0.0}, 0.95, 0.9), std::logic_error);
  for (int e = 0; e < 2; ++e)
    for (int t = 0; t < 3; ++t) {
      Transition tr;
      tr.reward = e + t;
      tr.value = 0.1 * t;
      tr.done = t == 2 && e == 0;
      buf.add(e, tr);
    }
  CHECK_THROWS_AS(buf.add(0, Transition{}), std::logic_error);
  buf.finish({1.0, 2.0}, 0.95, 0.9);
  CHECK(buf.finished());
  // Env 1 bootstraps from 2.0; env 0 terminates.
  const auto ref0 = gae_oracle({0, 1, 2}, {0, 0.1, 0.2}, {0, 0, 1}, 1.0, 0.95, 0.9);
  const auto ref1 = gae_oracle({1, 2, 3}, {0, 0.1, 0.2}, {0, 0, 0}, 2.0, 0.95, 0.9);
  for (int t = 0; t < 3; ++t) {
    CHECK(buf.raw_advantages()[t] == doctest::Approx(ref0[t]));
    CHECK(buf.raw_advantages()[3 + t] == doctest::Approx(ref1[t]));
    CHECK(buf.ret(3 + t) == doctest::Approx(ref1[t] + 0.1 * t));
  }
}

TEST_CASE("image augmentation") {
  const auto ring = ring_image(32);
  CHECK(shift_image(ring, 0, 0) == ring);
  const auto moved = shift_image(ring, 2, 0);
  for (int r = 0; r < 32; ++r) {
    CHECK(moved.at(r, 0) == 0);
    CHECK(moved.at(r, 1) == 0);
    for (int c = 2; c < 32; ++c) CHECK(moved.at(r, c) == ring.at(r, c - 2));
  }
  // Planes move together.
  render::ByteImage stack(16, 16, 2, 0);
  stack.at(0, 5, 5) = 200;
  stack.at(1, 5, 5) = 100;
  util::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto a = augment(stack, 2, rng);
    int found = 0;
    for (int r = 0; r < 16; ++r)
      for (int c = 0; c < 16; ++c)
        if (a.at(0, r, c) == 200) {
          CHECK(a.at(1, r, c) == 100);
          CHECK(std::abs(r - 5) <= 2);
          CHECK(std::abs(c - 5) <= 2);
          ++found;
        }
    CHECK(found == 1);
  }
  CHECK(augment(stack, 0, rng) == stack);
  CHECK_THROWS_AS(augment(stack, 4, rng), std::invalid_argument);
}

TEST_CASE("table network shapes") {
  NetworkSpec spec;
  ActorCritic<float> net(spec, {1, 128, 128, 0}, 2, 1);
  CHECK(net.conv_flat_features() == 9216);
  nn::Tensor<float> img({2, 1, 128, 128}, 0.5f), none;
  const auto out = net.forward(img, none, false);
  CHECK(out.mean.shape == std::vector<int>{2, 2});
  CHECK(out.value.shape == std::vector<int>{2, 1});
  CHECK_THROWS_AS(net.forward(nn::Tensor<float>({2, 1, 64, 64}), none, false), std::invalid_argument);

  ActorCritic<float> small(spec, {2, 64, 64, 5}, 3, 1);
  CHECK(small.conv_flat_features() == 64 * 4 * 4);
  CHECK_THROWS_AS(small.forward(nn::Tensor<float>({2, 2, 64, 64}), nn::Tensor<float>({3, 5}), false),
                  std::invalid_argument);
}

TEST_CASE("orthogonal init holds on every network weight matrix") {
  ActorCritic<float> net(NetworkSpec{}, {1, 64, 64, 11}, 2, 7);
  for (auto* p : net.params()) {
    if (p->name != "weight") continue;
    const int rows = p->shape[0], cols = static_cast<int>(p->value.size()) / rows;
    const bool by_rows = rows <= cols;
    const int m = by_rows ? rows : cols, len = by_rows ? cols : rows;
    // Gain-free check: normalize by the first diagonal entry.
    auto dot = [&](int a, int b) {
      double s = 0.0;
      for (int k = 0; k < len; ++k)
        s += static_cast<double>(by_rows ? p->value[a * cols + k] : p->value[k * cols + a]) *
             (by_rows ? p->value[b * cols + k] : p->value[k * cols + b]);
      return s;
    };
    const double g2 = dot(0, 0);
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) worst = std::max(worst, std::fabs(dot(a, b) / g2 - (a == b)));
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("zero weights give zero value and zero-mean actions") {
  ActorCritic<float> net(NetworkSpec{}, {1, 64, 64, 4}, 3, 5);
  net.set_flat_weights(std::vector<float>(net.num_params(), 0.0f));
  util::Rng rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    nn::Tensor<float> img({3, 1, 64, 64}), st({3, 4});
    for (auto& v : img.data) v = static_cast<float>(rng.uniform(0, 1));
    for (auto& v : st.data) v = static_cast<float>(rng.normal());
    const auto out = net.forward(img, st, false);
    for (float m : out.mean.data) CHECK(m == 0.0f);
    for (float v : out.value.data) CHECK(v == 0.0f);
  }
}

TEST_CASE("reduced network passes the 64-bit gradient check") {
  ActorCritic<double> net(reduced_spec(), {1, 16, 16, 3}, 2, 42);
  CHECK(net.num_params() <= 10000);
  util::Rng rng(6);
  nn::Tensor<double> img({2, 1, 16, 16}), st({2, 3});
  for (auto& v : img.data) v = rng.uniform(0, 1);
  for (auto& v : st.data) v = rng.normal();
  const auto r = grad_check(net, img, st);
  CHECK(r.checked == net.num_params());
  INFO("worst " << r.worst);
  CHECK(r.max_rel_error < 1e-4);
}

TEST_CASE("gaussian helpers") {
  const float mean[2] = {0.1f, -0.2f}, ls[2] = {0.0f, std::log(0.5f)}, act[2] = {0.1f, -0.2f};
  const double expect = -std::log(2 * M_PI) / 1.0 - std::log(0.5);
  CHECK(gaussian_log_prob(mean, ls, act, 2) == doctest::Approx(expect).epsilon(1e-6));
  CHECK(gaussian_entropy(ls, 2) == doctest::Approx(1.0 + std::log(2 * M_PI) + std::log(0.5)).epsilon(1e-6));
}

TEST_CASE("ppo update moves a bandit policy toward the rewarded action") {
  NetworkSpec spec;
  spec.state_layers = {16};
  spec.head_layers = {16};
  ActorCritic<float> net(spec, {0, 0, 0, 2}, 1, 3);
  PPOConfig cfg;
  cfg.n_envs = 4;
  cfg.epoch_steps = 256;
  Ppo ppo(net, cfg);
  util::Rng rng(8);
  const std::vector<float> state = {0.5f, -0.5f};
  auto policy_mean = [&] {
    nn::Tensor<float> none, st({1, 2});
    st.data = state;
    return net.forward(none, st, false).mean.data[0];
  };
  const float before = policy_mean();
  double max_post = 0.0;
  for (int it = 0; it < 15; ++it) {
    RolloutBuffer buf(cfg.n_envs, cfg.steps_per_env());
    for (int e = 0; e < cfg.n_envs; ++e)
      for (int t = 0; t < cfg.steps_per_env(); ++t) {
        nn::Tensor<float> none, st({1, 2});
        st.data = state;
        const auto out = net.forward(none, st, false);
        Transition tr;
        tr.state = state;
        const float sd = std::exp(net.log_std().value[0]);
        tr.action = {static_cast<float>(out.mean.data[0] + sd * rng.normal())};
        tr.log_prob = gaussian_log_prob(out.mean.ptr(), net.log_std().value.data(), tr.action.data(), 1);
        tr.value = out.value.data[0];
        tr.reward = -std::pow(tr.action[0] - 0.6, 2);
        tr.done = true;
        buf.add(e, tr);
      }
    buf.finish(std::vector<double>(cfg.n_envs, 0.0), cfg.gamma, cfg.gae_lambda);
    const auto st = ppo.update(buf, rng);
    max_post = std::max(max_post, st.max_clipped_norm);
    CHECK(std::isfinite(st.policy_loss));
  }
  CHECK(before == doctest::Approx(0.0).epsilon(0.05));
  CHECK(policy_mean() > 0.4f);
  CHECK(max_post <= 0.5 + 1e-9);
}

TEST_CASE("ppo config validation and round trip") {
  PPOConfig c;
  CHECK(c.steps_per_env() == 205);
  util::Config cfg;
  c.gamma = 0.9;
  c.kl_limit = 0.05;
  c.to_config(cfg);
  const auto back = PPOConfig::from_config(cfg);
  CHECK(back.gamma == 0.9);
  CHECK(back.kl_limit == 0.05);
  util::Config bad;
  bad.set("ppo.gamma", "1.5");
  CHECK_THROWS_AS(PPOConfig::from_config(bad), ConfigError);
  bad.set("ppo.gamma", "0.9");
  bad.set("ppo.clip_range", "0");
  CHECK_THROWS_AS(PPOConfig::from_config(bad), ConfigError);
}

TEST_CASE("checkpoints round-trip and reject other networks") {
  const auto dir = std::filesystem::temp_directory_path() / "tactile_test_rl";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "ck.bin").string();
  ActorCritic<float> a(NetworkSpec{}, {0, 0, 0, 6}, 2, 1), b(NetworkSpec{}, {0, 0, 0, 6}, 2, 2);
  save_checkpoint(path, a);
  CHECK(a.flat_weights() != b.flat_weights());
  load_checkpoint(path, b);
  CHECK(a.flat_weights() == b.flat_weights());
  ActorCritic<float> other(NetworkSpec{}, {0, 0, 0, 7}, 2, 1);
  CHECK_THROWS_AS(load_checkpoint(path, other), ConfigError);
  CHECK_THROWS_AS(load_checkpoint((dir / "missing.bin").string(), b), IoError);
  std::filesystem::remove_all(dir);
}
