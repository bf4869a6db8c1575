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

#include "tactile/rl/supervised.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "tactile/util/errors.hpp"
#include "tactile/util/rng.hpp"

namespace tactile::rl {

namespace {

constexpr int kMinSamples = 100;

std::vector<int> parse_list(const std::string& key, const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("{}: '{}' is not an integer list", key, s));
    }
  }
  return out;
}

void pack(const data::LoadedSplit& split, const std::vector<std::size_t>& idx, std::size_t begin,
          std::size_t end, nn::Tensor<float>& x) {
  const auto& first = split.images[idx[begin]];
  x = nn::Tensor<float>({static_cast<int>(end - begin), first.channels, first.height, first.width});
  const std::size_t per = x.stride0();
  for (std::size_t k = begin; k < end; ++k) {
    const auto& img = split.images[idx[k]];
    float* dst = x.ptr() + (k - begin) * per;
    for (std::size_t j = 0; j < per; ++j) dst[j] = img.data[j] * (1.0f / 255.0f);
  }
}

void check_split(const data::LoadedSplit& s, const char* name) {
  if (s.images.size() < kMinSamples)
    throw ConfigError(fmt::format("supervised: {} split has {} samples (need at least {})", name,
                                  s.images.size(), kMinSamples));
  if (s.label_names.size() < 2 || s.label_names[0] != "r_mm" || s.label_names[1] != "theta_rad")
    throw ConfigError(fmt::format("supervised: {} split is not an edge dataset", name));
}

}  // namespace

double angle_error(double a, double b) {
  return std::fabs(std::remainder(a - b, 2.0 * M_PI));
}

void SupervisedConfig::validate() const {
  if (conv_channels.empty()) throw ConfigError("sup.conv_channels must not be empty");
  for (int c : conv_channels)
    if (c < 1) throw ConfigError("sup.conv_channels must be positive");
  for (int f : fc_layers)
    if (f < 1) throw ConfigError("sup.fc_layers must be positive");
  if (epochs < 0) throw ConfigError("sup.epochs must be >= 0");
  if (batch_size < 2) throw ConfigError("sup.batch_size must be >= 2 (batch norm)");
  if (!(learning_rate > 0.0)) throw ConfigError("sup.learning_rate must be > 0");
  if (weight_decay < 0.0) throw ConfigError("sup.weight_decay must be >= 0");
  if (!(r_scale_mm > 0.0)) throw ConfigError("sup.r_scale_mm must be > 0");
}

SupervisedConfig SupervisedConfig::from_config(const util::Config& cfg) {
  SupervisedConfig c;
  if (auto v = cfg.find("sup.conv_channels")) c.conv_channels = parse_list("sup.conv_channels", *v);
  if (auto v = cfg.find("sup.fc_layers")) c.fc_layers = parse_list("sup.fc_layers", *v);
  c.epochs = static_cast<int>(cfg.get_int("sup.epochs", c.epochs));
  c.batch_size = static_cast<int>(cfg.get_int("sup.batch_size", c.batch_size));
  c.learning_rate = cfg.get_double("sup.learning_rate", c.learning_rate);
  c.weight_decay = cfg.get_double("sup.weight_decay", c.weight_decay);
  c.r_scale_mm = cfg.get_double("sup.r_scale_mm", c.r_scale_mm);
  c.validate();
  return c;
}

void SupervisedConfig::to_config(util::Config& cfg) const {
  cfg.set("sup.conv_channels", fmt::format("{}", fmt::join(conv_channels, ",")));
  cfg.set("sup.fc_layers", fmt::format("{}", fmt::join(fc_layers, ",")));
  cfg.set("sup.epochs", std::to_string(epochs));
  cfg.set("sup.batch_size", std::to_string(batch_size));
  cfg.set("sup.learning_rate", fmt::format("{}", learning_rate));
  cfg.set("sup.weight_decay", fmt::format("{}", weight_decay));
  cfg.set("sup.r_scale_mm", fmt::format("{}", r_scale_mm));
}

std::vector<std::string> SupervisedConfig::known_keys() {
  return {"sup.conv_channels", "sup.fc_layers",   "sup.epochs",    "sup.batch_size",
          "sup.learning_rate", "sup.weight_decay", "sup.r_scale_mm"};
}

EdgeRegressor::EdgeRegressor(const SupervisedConfig& cfg, int channels, int size, std::uint64_t seed) {
  cfg.validate();
  util::Rng rng(seed);
  int c = channels, s = size;
  for (int out : cfg.conv_channels) {
    if (s < 2) throw ConfigError(fmt::format("supervised: {} px input is too small for {} conv blocks", size,
                                             cfg.conv_channels.size()));
    auto& conv = net_.add<nn::Conv2d<float>>(c, out, 5, 1, 2);
    nn::orthogonal_init(conv.weight(), 1.0, rng);
    net_.add<nn::BatchNorm2d<float>>(out);
    net_.add<nn::ELU<float>>();
    net_.add<nn::MaxPool2d<float>>(2);
    c = out;
    s /= 2;
  }
  net_.add<nn::Flatten<float>>();
  flat_ = c * s * s;
  int d = flat_;
  for (int width : cfg.fc_layers) {
    auto& l = net_.add<nn::Linear<float>>(d, width);
    nn::orthogonal_init(l.weight(), 1.0, rng);
    net_.add<nn::ELU<float>>();
    d = width;
  }
  auto& out = net_.add<nn::Linear<float>>(d, 3);
  nn::orthogonal_init(out.weight(), 0.1, rng);
}

nn::Tensor<float> EdgeRegressor::forward(const nn::Tensor<float>& images, bool train) {
  return net_.forward(images, train);
}

void EdgeRegressor::backward(const nn::Tensor<float>& grad) { net_.backward(grad); }

SupervisedResult supervised_edge_regression(const data::LoadedSplit& train, const data::LoadedSplit& val,
                                            const SupervisedConfig& cfg, std::uint64_t seed, const LogFn& log) {
  cfg.validate();
  check_split(train, "training");
  check_split(val, "validation");
  const auto& im0 = train.images.front();
  if (im0.width != im0.height) throw ConfigError("supervised: images must be square");
  EdgeRegressor model(cfg, im0.channels, im0.width, util::mix_seed(seed, 1));
  auto params = model.params();
  nn::Adam<float> adam(params, cfg.learning_rate, 0.9, 0.999, 1e-8);
  for (auto* p : params)
    if (p->name.rfind("running", 0) == 0) adam.freeze(p);
  util::Rng rng(util::mix_seed(seed, 2));

  auto targets = [&](const std::vector<double>& l) {
    return std::array<float, 3>{static_cast<float>(l[0] / cfg.r_scale_mm), static_cast<float>(std::sin(l[1])),
                                static_cast<float>(std::cos(l[1]))};
  };

  SupervisedResult result;
  auto predict_val = [&] {
    std::vector<std::size_t> idx(val.images.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    result.pred_r_mm.clear();
    result.pred_theta_rad.clear();
    double er = 0.0, et = 0.0;
    for (std::size_t b = 0; b < idx.size(); b += 64) {
      const std::size_t e = std::min(idx.size(), b + 64);
      nn::Tensor<float> x;
      pack(val, idx, b, e, x);
      const auto y = model.forward(x, false);
      for (std::size_t k = b; k < e; ++k) {
        const float* row = y.ptr() + (k - b) * 3;
        const double r = row[0] * cfg.r_scale_mm, th = std::atan2(row[1], row[2]);
        result.pred_r_mm.push_back(r);
        result.pred_theta_rad.push_back(th);
        er += std::fabs(r - val.labels[k][0]);
        et += angle_error(th, val.labels[k][1]);
      }
    }
    result.mae_r_mm = er / idx.size();
    result.mae_theta_rad = et / idx.size();
  };

  std::vector<std::size_t> order(train.images.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batches = (order.size() + cfg.batch_size - 1) / cfg.batch_size;
  const std::size_t total = batches * static_cast<std::size_t>(cfg.epochs);
  std::size_t it = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng.engine());
    double loss_sum = 0.0;
    for (std::size_t b = 0; b < order.size(); b += cfg.batch_size) {
      const std::size_t e = std::min(order.size(), b + cfg.batch_size);
      if (e - b < 2) continue;  // batch norm needs two samples
      adam.set_lr(0.5 * cfg.learning_rate * (1.0 + std::cos(M_PI * static_cast<double>(it) / total)));
      ++it;
      nn::Tensor<float> x;
      pack(train, order, b, e, x);
      const auto y = model.forward(x, true);
      nn::Tensor<float> g(y.shape);
      const double n = static_cast<double>(e - b);
      double loss = 0.0;
      for (std::size_t k = b; k < e; ++k) {
        const auto t = targets(train.labels[order[k]]);
        for (int j = 0; j < 3; ++j) {
          const double d = y.data[(k - b) * 3 + j] - t[j];
          loss += d * d / n;
          g.data[(k - b) * 3 + j] = static_cast<float>(2.0 * d / n);
        }
      }
      if (!std::isfinite(loss))
        throw std::runtime_error(fmt::format("supervised: non-finite loss at epoch {}", epoch));
      nn::zero_grad(params);
      model.backward(g);
      if (cfg.weight_decay > 0.0)
        for (auto* p : params)
          if (p->name == "weight")
            for (std::size_t j = 0; j < p->value.size(); ++j)
              p->grad[j] += static_cast<float>(cfg.weight_decay * p->value[j]);
      adam.step();
      loss_sum += loss * n;
    }
    result.epoch_loss.push_back(loss_sum / order.size());
    predict_val();
    result.epoch_val_mae_theta.push_back(result.mae_theta_rad);
    if (log)
      log(fmt::format("epoch {}: loss {:.5f} val MAE r {:.3f} mm theta {:.4f} rad", epoch + 1,
                      result.epoch_loss.back(), result.mae_r_mm, result.mae_theta_rad));
  }
  if (cfg.epochs == 0) predict_val();

  double mean_r = 0.0, s = 0.0, c = 0.0;
  for (const auto& l : train.labels) {
    mean_r += l[0];
    s += std::sin(l[1]);
    c += std::cos(l[1]);
  }
  mean_r /= train.labels.size();
  const double mean_th = std::atan2(s, c);
  for (const auto& l : val.labels) {
    result.baseline_mae_r_mm += std::fabs(mean_r - l[0]);
    result.baseline_mae_theta_rad += angle_error(mean_th, l[1]);
  }
  result.baseline_mae_r_mm /= val.labels.size();
  result.baseline_mae_theta_rad /= val.labels.size();
  return result;
}

}  // namespace tactile::rl
