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
#include <string>
#include <vector>

#include "tactile/data/dataset.hpp"
#include "tactile/nn/layers.hpp"
#include "tactile/rl/train.hpp"
#include "tactile/util/config.hpp"

namespace tactile::rl {

// Edge pose regressor: conv blocks (k5 s1 p2, batch norm, ELU, 2x2 max pool)
// then ELU fully connected layers and a linear output (r / r_scale, sin, cos).
struct SupervisedConfig {
  std::vector<int> conv_channels = {16, 32, 32, 64};
  std::vector<int> fc_layers = {1024, 512};
  int epochs = 16;
  int batch_size = 32;
  double learning_rate = 1e-3;  // cosine-decayed to zero over training
  double weight_decay = 0.0;
  double r_scale_mm = 6.0;

  void validate() const;  // throws ConfigError
  static SupervisedConfig from_config(const util::Config& cfg);  // sup.* keys
  void to_config(util::Config& cfg) const;
  static std::vector<std::string> known_keys();
};

class EdgeRegressor {
 public:
  EdgeRegressor(const SupervisedConfig& cfg, int channels, int size, std::uint64_t seed);
  // images N x C x H x W in [0, 1]; returns N x 3.
  nn::Tensor<float> forward(const nn::Tensor<float>& images, bool train);
  void backward(const nn::Tensor<float>& grad);
  std::vector<nn::Param<float>*> params() { return net_.params(); }
  int flat_features() const { return flat_; }

 private:
  nn::Sequential<float> net_;
  int flat_ = 0;
};

struct SupervisedResult {
  double mae_r_mm = 0.0;
  double mae_theta_rad = 0.0;
  // Scores of predicting the training-set mean label (r) and circular mean (theta).
  double baseline_mae_r_mm = 0.0;
  double baseline_mae_theta_rad = 0.0;
  std::vector<double> epoch_loss;
  std::vector<double> epoch_val_mae_theta;
  std::vector<double> pred_r_mm, pred_theta_rad;  // held-out predictions
};

// Trains on `train` and reports MAE on `val`. Labels must be (r_mm, theta_rad).
// Throws ConfigError when either split has fewer than 100 samples.
SupervisedResult supervised_edge_regression(const data::LoadedSplit& train, const data::LoadedSplit& val,
                                            const SupervisedConfig& cfg, std::uint64_t seed,
                                            const LogFn& log = {});

double angle_error(double a, double b);  // |wrap(a - b)| in [0, pi]

}  // namespace tactile::rl
