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
#include <memory>
#include <string>
#include <vector>

#include "tactile/nn/tensor.hpp"
#include "tactile/util/rng.hpp"

namespace tactile::nn {

// C = alpha * op(A) * op(B) + beta * C, row-major. float uses the dispatched
// SIMD kernel, double the reference loop.
template <typename T>
void gemm(bool ta, bool tb, int m, int n, int k, T alpha, const T* a, int lda, const T* b, int ldb,
          T beta, T* c, int ldc);

template <typename T>
struct Param {
  std::string name;
  std::vector<int> shape;
  std::vector<T> value;
  std::vector<T> grad;

  Param(std::string n, std::vector<int> s)
      : name(std::move(n)), shape(std::move(s)), value(Tensor<T>::count(shape)),
        grad(value.size()) {}
};

template <typename T>
class Layer {
 public:
  virtual ~Layer() = default;
  // Caches what backward needs; `train` selects batch statistics in BatchNorm.
  virtual Tensor<T> forward(const Tensor<T>& x, bool train) = 0;
  // Accumulates parameter gradients and returns the input gradient.
  virtual Tensor<T> backward(const Tensor<T>& grad_out) = 0;
  virtual std::vector<Param<T>*> params() { return {}; }
  virtual std::vector<int> output_shape(const std::vector<int>& input) const = 0;
  virtual std::string describe() const = 0;
};

template <typename T>
class Linear : public Layer<T> {
 public:
  Linear(int in, int out);
  Tensor<T> forward(const Tensor<T>& x, bool train) override;
  Tensor<T> backward(const Tensor<T>& grad_out) override;
  std::vector<Param<T>*> params() override { return {&weight_, &bias_}; }
  std::vector<int> output_shape(const std::vector<int>& input) const override;
  std::string describe() const override;
  Param<T>& weight() { return weight_; }
  Param<T>& bias() { return bias_; }

 private:
  int in_, out_;
  Param<T> weight_;  // out x in
  Param<T> bias_;
  Tensor<T> input_;
};

template <typename T>
class Conv2d : public Layer<T> {
 public:
  Conv2d(int in_channels, int out_channels, int kernel, int stride, int padding = 0);
  Tensor<T> forward(const Tensor<T>& x, bool train) override;
  Tensor<T> backward(const Tensor<T>& grad_out) override;
  std::vector<Param<T>*> params() override { return {&weight_, &bias_}; }
  std::vector<int> output_shape(const std::vector<int>& input) const override;
  std::string describe() const override;
  Param<T>& weight() { return weight_; }

 private:
  void im2col(const T* img, int h, int w, int oh, int ow, T* col) const;
  void col2im(const T* col, int h, int w, int oh, int ow, T* img) const;

  int cin_, cout_, k_, stride_, pad_;
  Param<T> weight_;  // cout x (cin * k * k)
  Param<T> bias_;
  Tensor<T> input_;
};

template <typename T>
class ReLU : public Layer<T> {
 public:
  Tensor<T> forward(const Tensor<T>& x, bool train) override;
  Tensor<T> backward(const Tensor<T>& grad_out) override;
  std::vector<int> output_shape(const std::vector<int>& input) const override { return input; }
  std::string describe() const override { return "relu"; }
  // Records offsets that move pre-activations within `margin` of zero out to
  // +-margin at the next forward call, then keeps reusing them (finite-difference
  // checks around the recorded point). margin 0 clears.
  void freeze_nudge(T margin);

 private:
  Tensor<T> pre_;
  T margin_ = 0;
  bool record_ = false;
  std::vector<T> offset_;
};

template <typename T>
class Tanh : public Layer<T> {
 public:
  Tensor<T> forward(const Tensor<T>& x, bool train) override;
  Tensor<T> backward(const Tensor<T>& grad_out) override;
  std::vector<int> output_shape(const std::vector<int>& input) const override { return input; }
  std::string describe() const override { return "tanh"; }

 private:
  Tensor<T> out_;
};

template <typename T>
class ELU : public Layer<T> {
 public:
  explicit ELU(T alpha = 1) : alpha_(alpha) {}
  Tensor<T> forward(const Tensor<T>& x, bool train) override;
  Tensor<T> backward(const Tensor<T>& grad_out) override;
  std::vector<int> output_shape(const std::vector<int>& input) const override { return input; }
  std::string describe() const override { return "elu"; }

 private:
  T alpha_;
  Tensor<T> in_, out_;
};

template <typename T>
class MaxPool2d : public Layer<T> {
 public:
  explicit MaxPool2d(int size) : size_(size) {}
  Tensor<T> forward(const Tensor<T>& x, bool train) override;
  Tensor<T> backward(const Tensor<T>& grad_out) override;
  std::vector<int> output_shape(const std::vector<int>& input) const override;
  std::string describe() const override;

 private:
  int size_;
  std::vector<int> in_shape_;
  std::vector<std::uint32_t> argmax_;
};

template <typename T>
class BatchNorm2d : public Layer<T> {
 public:
  explicit BatchNorm2d(int channels, T momentum = T(0.1), T eps = T(1e-5));
  Tensor<T> forward(const Tensor<T>& x, bool train) override;
  Tensor<T> backward(const Tensor<T>& grad_out) override;
  // Running statistics are persisted with the weights.
  std::vector<Param<T>*> params() override { return {&gamma_, &beta_, &running_mean_, &running_var_}; }
  std::vector<int> output_shape(const std::vector<int>& input) const override { return input; }
  std::string describe() const override;

 private:
  int c_;
  T momentum_, eps_;
  Param<T> gamma_, beta_, running_mean_, running_var_;
  Tensor<T> xhat_;
  std::vector<T> inv_std_;
  bool trained_batch_ = false;
};

template <typename T>
class Flatten : public Layer<T> {
 public:
  Tensor<T> forward(const Tensor<T>& x, bool train) override;
  Tensor<T> backward(const Tensor<T>& grad_out) override;
  std::vector<int> output_shape(const std::vector<int>& input) const override;
  std::string describe() const override { return "flatten"; }

 private:
  std::vector<int> in_shape_;
};

template <typename T>
class Sequential {
 public:
  Sequential() = default;
  Sequential(Sequential&&) = default;
  Sequential& operator=(Sequential&&) = default;

  template <class L, class... Args>
  L& add(Args&&... args) {
    auto layer = std::make_unique<L>(std::forward<Args>(args)...);
    L& ref = *layer;
    layers_.push_back(std::move(layer));
    return ref;
  }
  Tensor<T> forward(const Tensor<T>& x, bool train);
  Tensor<T> backward(const Tensor<T>& grad_out);
  std::vector<Param<T>*> params();
  std::vector<int> output_shape(std::vector<int> input) const;
  std::string describe() const;
  std::size_t size() const { return layers_.size(); }
  Layer<T>& layer(std::size_t i) { return *layers_[i]; }

 private:
  std::vector<std::unique_ptr<Layer<T>>> layers_;
};

// Fills a (rows x cols) matrix with gain times a semi-orthogonal matrix:
// orthonormal rows when rows <= cols, orthonormal columns otherwise.
void orthogonal_init(std::vector<double>& w, int rows, int cols, double gain, util::Rng& rng);

template <typename T>
void orthogonal_init(Param<T>& weight, double gain, util::Rng& rng);

template <typename T>
void zero_grad(const std::vector<Param<T>*>& params);

// Scales gradients so their global L2 norm is at most max_norm; returns the norm before clipping.
template <typename T>
double clip_grad_norm(const std::vector<Param<T>*>& params, double max_norm);

template <typename T>
class Adam {
 public:
  Adam(std::vector<Param<T>*> params, double lr, double beta1 = 0.9, double beta2 = 0.999,
       double eps = 1e-5);
  void step();
  void set_lr(double lr) { lr_ = lr; }
  // Parameters excluded from updates (e.g. running statistics).
  void freeze(const Param<T>* p);

 private:
  std::vector<Param<T>*> params_;
  std::vector<std::vector<double>> m_, v_;
  std::vector<bool> frozen_;
  double lr_, b1_, b2_, eps_;
  long long t_ = 0;
};

}  // namespace tactile::nn
