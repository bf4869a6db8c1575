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

#include "tactile/nn/layers.hpp"
#include "tactile/util/config.hpp"

namespace tactile::rl {

struct NetworkSpec {
  std::vector<int> conv_filters = {32, 64, 64};
  std::vector<int> conv_kernels = {8, 4, 3};
  std::vector<int> conv_strides = {4, 2, 1};
  int conv_features = 512;
  std::vector<int> state_layers = {64, 64};
  std::vector<int> head_layers = {256, 256};
  bool value_grad_to_trunk = true;

  void validate() const;  // throws ConfigError
  std::string describe() const;
  static NetworkSpec from_config(const util::Config& cfg);
  void to_config(util::Config& cfg) const;
  static std::vector<std::string> known_keys();
};

struct InputShape {
  int channels = 0;  // 0 without an image
  int height = 0;
  int width = 0;
  int state_dim = 0;
  bool operator==(const InputShape&) const = default;
};

// Shared-trunk Gaussian actor-critic. Images go through the conv stack and a
// projection; state vectors through the state encoder; the concatenated
// features feed separate policy and value heads. log-std is state independent.
template <typename T>
class ActorCritic {
 public:
  ActorCritic(const NetworkSpec& spec, const InputShape& input, int action_dim, std::uint64_t seed);

  struct Output {
    nn::Tensor<T> mean;   // N x action_dim
    nn::Tensor<T> value;  // N x 1
  };
  // images: N x C x H x W scaled to [0,1] (ignored without conv stack); state: N x S.
  Output forward(const nn::Tensor<T>& images, const nn::Tensor<T>& state, bool train = true);
  // Accumulates gradients for the last forward call.
  void backward(const nn::Tensor<T>& d_mean, const nn::Tensor<T>& d_value);

  std::vector<nn::Param<T>*> params();
  nn::Param<T>& log_std() { return log_std_; }
  std::size_t num_params();
  // Flattened conv output size before the projection (0 without images).
  int conv_flat_features() const { return conv_flat_; }
  int action_dim() const { return action_dim_; }
  const InputShape& input() const { return input_; }
  const NetworkSpec& spec() const { return spec_; }
  // Hash of spec, input shape and action size; checkpoints must match it.
  std::uint64_t signature() const;
  std::string describe() const;
  // Every ReLU in the trunk (for finite-difference checks).
  std::vector<nn::ReLU<T>*> relus() { return relus_; }

  std::vector<float> flat_weights();
  void set_flat_weights(const std::vector<float>& w);

 private:
  NetworkSpec spec_;
  InputShape input_;
  int action_dim_;
  int conv_flat_ = 0;
  int conv_out_ = 0;
  int state_out_ = 0;
  nn::Sequential<T> conv_;
  nn::Sequential<T> state_;
  nn::Sequential<T> pi_;
  nn::Sequential<T> v_;
  nn::Param<T> log_std_;
  std::vector<nn::ReLU<T>*> relus_;
  int batch_ = 0;
};

// Diagonal Gaussian helpers over one row.
double gaussian_log_prob(const float* mean, const float* log_std, const float* action, int dim);
double gaussian_entropy(const float* log_std, int dim);

}  // namespace tactile::rl
