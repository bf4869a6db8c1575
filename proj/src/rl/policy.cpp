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

#include "tactile/rl/policy.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "tactile/util/errors.hpp"
#include "tactile/util/hash.hpp"

namespace tactile::rl {

namespace {

std::vector<int> parse_int_list(const std::string& key, const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("{}: '{}' is not an integer list", key, s));
    }
  }
  return out;
}

std::string join(const std::vector<int>& v) { return fmt::format("{}", fmt::join(v, ",")); }

constexpr double kLog2Pi = 1.8378770664093453;

}  // namespace

void NetworkSpec::validate() const {
  if (conv_filters.size() != conv_kernels.size() || conv_filters.size() != conv_strides.size())
    throw ConfigError("net: conv filters, kernels and strides must have equal length");
  for (std::size_t i = 0; i < conv_filters.size(); ++i)
    if (conv_filters[i] < 1 || conv_kernels[i] < 1 || conv_strides[i] < 1)
      throw ConfigError("net: conv sizes must be positive");
  if (conv_features < 1) throw ConfigError("net: conv_features must be positive");
  for (int s : state_layers)
    if (s < 1) throw ConfigError("net: state layer sizes must be positive");
  for (int s : head_layers)
    if (s < 1) throw ConfigError("net: head layer sizes must be positive");
}

std::string NetworkSpec::describe() const {
  return fmt::format("conv[{}]k[{}]s[{}]f{} state[{}] head[{}] vtrunk{}", join(conv_filters),
                     join(conv_kernels), join(conv_strides), conv_features, join(state_layers),
                     join(head_layers), value_grad_to_trunk ? 1 : 0);
}

NetworkSpec NetworkSpec::from_config(const util::Config& cfg) {
  NetworkSpec s;
  if (auto v = cfg.find("net.conv_filters")) s.conv_filters = parse_int_list("net.conv_filters", *v);
  if (auto v = cfg.find("net.conv_kernels")) s.conv_kernels = parse_int_list("net.conv_kernels", *v);
  if (auto v = cfg.find("net.conv_strides")) s.conv_strides = parse_int_list("net.conv_strides", *v);
  if (auto v = cfg.find("net.state_layers")) s.state_layers = parse_int_list("net.state_layers", *v);
  if (auto v = cfg.find("net.head_layers")) s.head_layers = parse_int_list("net.head_layers", *v);
  s.conv_features = static_cast<int>(cfg.get_int("net.conv_features", s.conv_features));
  s.value_grad_to_trunk = cfg.get_bool("net.value_grad_to_trunk", s.value_grad_to_trunk);
  s.validate();
  return s;
}

void NetworkSpec::to_config(util::Config& cfg) const {
  cfg.set("net.conv_filters", join(conv_filters));
  cfg.set("net.conv_kernels", join(conv_kernels));
  cfg.set("net.conv_strides", join(conv_strides));
  cfg.set("net.conv_features", std::to_string(conv_features));
  cfg.set("net.state_layers", join(state_layers));
  cfg.set("net.head_layers", join(head_layers));
  cfg.set("net.value_grad_to_trunk", value_grad_to_trunk ? "true" : "false");
}

std::vector<std::string> NetworkSpec::known_keys() {
  return {"net.conv_filters", "net.conv_kernels", "net.conv_strides", "net.conv_features",
          "net.state_layers", "net.head_layers",  "net.value_grad_to_trunk"};
}

template <typename T>
ActorCritic<T>::ActorCritic(const NetworkSpec& spec, const InputShape& input, int action_dim,
                            std::uint64_t seed)
    : spec_(spec), input_(input), action_dim_(action_dim), log_std_("log_std", {action_dim}) {
  spec_.validate();
  if (action_dim < 1) throw std::invalid_argument("actor-critic: action_dim must be >= 1");
  if (input.channels == 0 && input.state_dim == 0)
    throw std::invalid_argument("actor-critic: no inputs");
  util::Rng rng(seed);
  const double hidden_gain = std::sqrt(2.0);
  if (input.channels > 0) {
    int c = input.channels;
    for (std::size_t i = 0; i < spec_.conv_filters.size(); ++i) {
      auto& conv = conv_.template add<nn::Conv2d<T>>(c, spec_.conv_filters[i], spec_.conv_kernels[i],
                                                     spec_.conv_strides[i]);
      nn::orthogonal_init(conv.weight(), hidden_gain, rng);
      relus_.push_back(&conv_.template add<nn::ReLU<T>>());
      c = spec_.conv_filters[i];
    }
    conv_.template add<nn::Flatten<T>>();
    const auto flat = conv_.output_shape({1, input.channels, input.height, input.width});
    conv_flat_ = flat[1];
    auto& proj = conv_.template add<nn::Linear<T>>(conv_flat_, spec_.conv_features);
    nn::orthogonal_init(proj.weight(), hidden_gain, rng);
    relus_.push_back(&conv_.template add<nn::ReLU<T>>());
    conv_out_ = spec_.conv_features;
  }
  if (input.state_dim > 0) {
    int d = input.state_dim;
    for (int width : spec_.state_layers) {
      auto& l = state_.template add<nn::Linear<T>>(d, width);
      nn::orthogonal_init(l.weight(), hidden_gain, rng);
      relus_.push_back(&state_.template add<nn::ReLU<T>>());
      d = width;
    }
    state_out_ = d;
  }
  auto build_head = [&](nn::Sequential<T>& head, int out, double out_gain) {
    int d = conv_out_ + state_out_;
    for (int width : spec_.head_layers) {
      auto& l = head.template add<nn::Linear<T>>(d, width);
      nn::orthogonal_init(l.weight(), hidden_gain, rng);
      head.template add<nn::Tanh<T>>();
      d = width;
    }
    auto& l = head.template add<nn::Linear<T>>(d, out);
    nn::orthogonal_init(l.weight(), out_gain, rng);
  };
  build_head(pi_, action_dim, 0.01);
  build_head(v_, 1, 1.0);
}

template <typename T>
typename ActorCritic<T>::Output ActorCritic<T>::forward(const nn::Tensor<T>& images,
                                                        const nn::Tensor<T>& state, bool train) {
  int n = -1;
  nn::Tensor<T> fc, fs;
  if (input_.channels > 0) {
    const std::vector<int> want = {images.shape.empty() ? 0 : images.dim(0), input_.channels,
                                   input_.height, input_.width};
    if (images.shape != want)
      throw std::invalid_argument(fmt::format("actor-critic: image shape {} != {}",
                                              nn::shape_string(images.shape), nn::shape_string(want)));
    n = images.dim(0);
    fc = conv_.forward(images, train);
  }
  if (input_.state_dim > 0) {
    if (state.rank() != 2 || state.dim(1) != input_.state_dim || (n >= 0 && state.dim(0) != n))
      throw std::invalid_argument(fmt::format("actor-critic: state shape {} (expected N x {})",
                                              nn::shape_string(state.shape), input_.state_dim));
    n = state.dim(0);
    fs = state_.forward(state, train);
  }
  batch_ = n;
  const int f = conv_out_ + state_out_;
  nn::Tensor<T> feat({n, f});
  for (int i = 0; i < n; ++i) {
    T* row = feat.ptr() + static_cast<std::size_t>(i) * f;
    if (conv_out_ > 0) std::copy_n(fc.ptr() + static_cast<std::size_t>(i) * conv_out_, conv_out_, row);
    if (state_out_ > 0)
      std::copy_n(fs.ptr() + static_cast<std::size_t>(i) * state_out_, state_out_, row + conv_out_);
  }
  return {pi_.forward(feat, train), v_.forward(feat, train)};
}

template <typename T>
void ActorCritic<T>::backward(const nn::Tensor<T>& d_mean, const nn::Tensor<T>& d_value) {
  nn::Tensor<T> df = pi_.backward(d_mean);
  const nn::Tensor<T> dfv = v_.backward(d_value);
  if (spec_.value_grad_to_trunk)
    for (std::size_t i = 0; i < df.size(); ++i) df.data[i] += dfv.data[i];
  const int f = conv_out_ + state_out_;
  if (conv_out_ > 0) {
    nn::Tensor<T> dc({batch_, conv_out_});
    for (int i = 0; i < batch_; ++i)
      std::copy_n(df.ptr() + static_cast<std::size_t>(i) * f, conv_out_,
                  dc.ptr() + static_cast<std::size_t>(i) * conv_out_);
    conv_.backward(dc);
  }
  if (state_out_ > 0) {
    nn::Tensor<T> ds({batch_, state_out_});
    for (int i = 0; i < batch_; ++i)
      std::copy_n(df.ptr() + static_cast<std::size_t>(i) * f + conv_out_, state_out_,
                  ds.ptr() + static_cast<std::size_t>(i) * state_out_);
    state_.backward(ds);
  }
}

template <typename T>
std::vector<nn::Param<T>*> ActorCritic<T>::params() {
  std::vector<nn::Param<T>*> out;
  for (auto* seq : {&conv_, &state_, &pi_, &v_})
    for (auto* p : seq->params()) out.push_back(p);
  out.push_back(&log_std_);
  return out;
}

template <typename T>
std::size_t ActorCritic<T>::num_params() {
  std::size_t n = 0;
  for (auto* p : params()) n += p->value.size();
  return n;
}

template <typename T>
std::string ActorCritic<T>::describe() const {
  return fmt::format("{} | in {}x{}x{}+{} | act {}", spec_.describe(), input_.channels,
                     input_.height, input_.width, input_.state_dim, action_dim_);
}

template <typename T>
std::uint64_t ActorCritic<T>::signature() const {
  return util::fnv1a(describe());
}

template <typename T>
std::vector<float> ActorCritic<T>::flat_weights() {
  std::vector<float> w;
  for (auto* p : params())
    for (T v : p->value) w.push_back(static_cast<float>(v));
  return w;
}

template <typename T>
void ActorCritic<T>::set_flat_weights(const std::vector<float>& w) {
  if (w.size() != num_params())
    throw std::invalid_argument(fmt::format("weights: expected {} values, got {}", num_params(), w.size()));
  std::size_t k = 0;
  for (auto* p : params())
    for (T& v : p->value) v = static_cast<T>(w[k++]);
}

double gaussian_log_prob(const float* mean, const float* log_std, const float* action, int dim) {
  double lp = 0.0;
  for (int j = 0; j < dim; ++j) {
    const double z = (static_cast<double>(action[j]) - mean[j]) * std::exp(-static_cast<double>(log_std[j]));
    lp += -0.5 * z * z - log_std[j] - 0.5 * kLog2Pi;
  }
  return lp;
}

double gaussian_entropy(const float* log_std, int dim) {
  double h = 0.0;
  for (int j = 0; j < dim; ++j) h += 0.5 + 0.5 * kLog2Pi + log_std[j];
  return h;
}

template class ActorCritic<float>;
template class ActorCritic<double>;

}  // namespace tactile::rl
