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

#include "tactile/nn/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "tactile/simd/gemm_reference.hpp"
#include "tactile/simd/kernels.hpp"

namespace tactile::nn {

std::string shape_string(const std::vector<int>& shape) {
  return fmt::format("[{}]", fmt::join(shape, ", "));
}

template <>
void gemm<float>(bool ta, bool tb, int m, int n, int k, float alpha, const float* a, int lda,
                 const float* b, int ldb, float beta, float* c, int ldc) {
  simd::kernels().sgemm(ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

template <>
void gemm<double>(bool ta, bool tb, int m, int n, int k, double alpha, const double* a, int lda,
                  const double* b, int ldb, double beta, double* c, int ldc) {
  simd::gemm_reference<double>(ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

// ---------------------------------------------------------------- Linear

template <typename T>
Linear<T>::Linear(int in, int out)
    : in_(in), out_(out), weight_("weight", {out, in}), bias_("bias", {out}) {
  require(in > 0 && out > 0, "linear: sizes must be positive");
}

template <typename T>
std::vector<int> Linear<T>::output_shape(const std::vector<int>& input) const {
  require(input.size() == 2 && input[1] == in_,
          fmt::format("linear({}->{}): bad input {}", in_, out_, shape_string(input)));
  return {input[0], out_};
}

template <typename T>
std::string Linear<T>::describe() const {
  return fmt::format("linear({}->{})", in_, out_);
}

template <typename T>
Tensor<T> Linear<T>::forward(const Tensor<T>& x, bool) {
  const auto shape = output_shape(x.shape);
  input_ = x;
  Tensor<T> y(shape);
  const int n = x.dim(0);
  gemm<T>(false, true, n, out_, in_, T(1), x.ptr(), in_, weight_.value.data(), in_, T(0), y.ptr(), out_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < out_; ++j) y.data[static_cast<std::size_t>(i) * out_ + j] += bias_.value[j];
  return y;
}

template <typename T>
Tensor<T> Linear<T>::backward(const Tensor<T>& dy) {
  const int n = input_.dim(0);
  require(dy.shape == std::vector<int>{n, out_}, "linear: gradient shape mismatch");
  gemm<T>(true, false, out_, in_, n, T(1), dy.ptr(), out_, input_.ptr(), in_, T(1),
          weight_.grad.data(), in_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < out_; ++j) bias_.grad[j] += dy.data[static_cast<std::size_t>(i) * out_ + j];
  Tensor<T> dx(input_.shape);
  gemm<T>(false, false, n, in_, out_, T(1), dy.ptr(), out_, weight_.value.data(), in_, T(0),
          dx.ptr(), in_);
  return dx;
}

// ---------------------------------------------------------------- Conv2d

template <typename T>
Conv2d<T>::Conv2d(int in_channels, int out_channels, int kernel, int stride, int padding)
    : cin_(in_channels), cout_(out_channels), k_(kernel), stride_(stride), pad_(padding),
      weight_("weight", {out_channels, in_channels * kernel * kernel}), bias_("bias", {out_channels}) {
  require(cin_ > 0 && cout_ > 0 && k_ > 0 && stride_ > 0 && pad_ >= 0, "conv2d: bad geometry");
}

template <typename T>
std::vector<int> Conv2d<T>::output_shape(const std::vector<int>& in) const {
  require(in.size() == 4 && in[1] == cin_,
          fmt::format("{}: bad input {}", describe(), shape_string(in)));
  const int oh = (in[2] + 2 * pad_ - k_) / stride_ + 1;
  const int ow = (in[3] + 2 * pad_ - k_) / stride_ + 1;
  require(in[2] + 2 * pad_ >= k_ && in[3] + 2 * pad_ >= k_ && oh > 0 && ow > 0,
          fmt::format("{}: input {} smaller than kernel", describe(), shape_string(in)));
  return {in[0], cout_, oh, ow};
}

template <typename T>
std::string Conv2d<T>::describe() const {
  return fmt::format("conv2d({}->{}, k{}, s{}, p{})", cin_, cout_, k_, stride_, pad_);
}

template <typename T>
void Conv2d<T>::im2col(const T* img, int h, int w, int oh, int ow, T* col) const {
  const int p = oh * ow;
  for (int c = 0; c < cin_; ++c)
    for (int ky = 0; ky < k_; ++ky)
      for (int kx = 0; kx < k_; ++kx) {
        T* row = col + static_cast<std::size_t>((c * k_ + ky) * k_ + kx) * p;
        for (int oy = 0; oy < oh; ++oy) {
          const int iy = oy * stride_ + ky - pad_;
          for (int ox = 0; ox < ow; ++ox) {
            const int ix = ox * stride_ + kx - pad_;
            row[oy * ow + ox] = (iy >= 0 && iy < h && ix >= 0 && ix < w)
                                    ? img[(static_cast<std::size_t>(c) * h + iy) * w + ix]
                                    : T(0);
          }
        }
      }
}

template <typename T>
void Conv2d<T>::col2im(const T* col, int h, int w, int oh, int ow, T* img) const {
  const int p = oh * ow;
  for (int c = 0; c < cin_; ++c)
    for (int ky = 0; ky < k_; ++ky)
      for (int kx = 0; kx < k_; ++kx) {
        const T* row = col + static_cast<std::size_t>((c * k_ + ky) * k_ + kx) * p;
        for (int oy = 0; oy < oh; ++oy) {
          const int iy = oy * stride_ + ky - pad_;
          if (iy < 0 || iy >= h) continue;
          for (int ox = 0; ox < ow; ++ox) {
            const int ix = ox * stride_ + kx - pad_;
            if (ix >= 0 && ix < w) img[(static_cast<std::size_t>(c) * h + iy) * w + ix] += row[oy * ow + ox];
          }
        }
      }
}

template <typename T>
Tensor<T> Conv2d<T>::forward(const Tensor<T>& x, bool) {
  const auto shape = output_shape(x.shape);
  input_ = x;
  const int n = x.dim(0), h = x.dim(2), w = x.dim(3), oh = shape[2], ow = shape[3];
  const int kk = cin_ * k_ * k_, p = oh * ow;
  Tensor<T> y(shape);
  std::vector<T> col(static_cast<std::size_t>(kk) * p);
  for (int i = 0; i < n; ++i) {
    im2col(x.ptr() + i * x.stride0(), h, w, oh, ow, col.data());
    T* out = y.ptr() + i * y.stride0();
    gemm<T>(false, false, cout_, p, kk, T(1), weight_.value.data(), kk, col.data(), p, T(0), out, p);
    for (int c = 0; c < cout_; ++c)
      for (int j = 0; j < p; ++j) out[c * p + j] += bias_.value[c];
  }
  return y;
}

template <typename T>
Tensor<T> Conv2d<T>::backward(const Tensor<T>& dy) {
  const auto shape = output_shape(input_.shape);
  require(dy.shape == shape, "conv2d: gradient shape mismatch");
  const int n = input_.dim(0), h = input_.dim(2), w = input_.dim(3), oh = shape[2], ow = shape[3];
  const int kk = cin_ * k_ * k_, p = oh * ow;
  Tensor<T> dx(input_.shape);
  std::vector<T> col(static_cast<std::size_t>(kk) * p), dcol(col.size());
  for (int i = 0; i < n; ++i) {
    const T* g = dy.ptr() + i * dy.stride0();
    im2col(input_.ptr() + i * input_.stride0(), h, w, oh, ow, col.data());
    gemm<T>(false, true, cout_, kk, p, T(1), g, p, col.data(), p, T(1), weight_.grad.data(), kk);
    for (int c = 0; c < cout_; ++c) {
      T s = 0;
      for (int j = 0; j < p; ++j) s += g[c * p + j];
      bias_.grad[c] += s;
    }
    gemm<T>(true, false, kk, p, cout_, T(1), weight_.value.data(), kk, g, p, T(0), dcol.data(), p);
    col2im(dcol.data(), h, w, oh, ow, dx.ptr() + i * dx.stride0());
  }
  return dx;
}

// ---------------------------------------------------------------- activations

template <typename T>
void ReLU<T>::freeze_nudge(T margin) {
  margin_ = margin;
  record_ = margin > 0;
  offset_.clear();
}

template <typename T>
Tensor<T> ReLU<T>::forward(const Tensor<T>& x, bool) {
  pre_ = x;
  if (record_) {
    offset_.assign(x.size(), T(0));
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::fabs(x.data[i]) < margin_) offset_[i] = (x.data[i] < 0 ? -margin_ : margin_) - x.data[i];
    record_ = false;
  }
  if (!offset_.empty() && offset_.size() == x.size())
    for (std::size_t i = 0; i < x.size(); ++i) pre_.data[i] += offset_[i];
  Tensor<T> y(x.shape);
  for (std::size_t i = 0; i < x.size(); ++i) y.data[i] = pre_.data[i] > 0 ? pre_.data[i] : T(0);
  return y;
}

template <typename T>
Tensor<T> ReLU<T>::backward(const Tensor<T>& dy) {
  require(dy.size() == pre_.size(), "relu: gradient shape mismatch");
  Tensor<T> dx(dy.shape);
  for (std::size_t i = 0; i < dy.size(); ++i) dx.data[i] = pre_.data[i] > 0 ? dy.data[i] : T(0);
  return dx;
}

template <typename T>
Tensor<T> Tanh<T>::forward(const Tensor<T>& x, bool) {
  out_ = Tensor<T>(x.shape);
  for (std::size_t i = 0; i < x.size(); ++i) out_.data[i] = std::tanh(x.data[i]);
  return out_;
}

template <typename T>
Tensor<T> Tanh<T>::backward(const Tensor<T>& dy) {
  require(dy.size() == out_.size(), "tanh: gradient shape mismatch");
  Tensor<T> dx(dy.shape);
  for (std::size_t i = 0; i < dy.size(); ++i) dx.data[i] = dy.data[i] * (T(1) - out_.data[i] * out_.data[i]);
  return dx;
}

template <typename T>
Tensor<T> ELU<T>::forward(const Tensor<T>& x, bool) {
  in_ = x;
  out_ = Tensor<T>(x.shape);
  for (std::size_t i = 0; i < x.size(); ++i)
    out_.data[i] = x.data[i] > 0 ? x.data[i] : alpha_ * std::expm1(x.data[i]);
  return out_;
}

template <typename T>
Tensor<T> ELU<T>::backward(const Tensor<T>& dy) {
  require(dy.size() == in_.size(), "elu: gradient shape mismatch");
  Tensor<T> dx(dy.shape);
  for (std::size_t i = 0; i < dy.size(); ++i)
    dx.data[i] = in_.data[i] > 0 ? dy.data[i] : dy.data[i] * (out_.data[i] + alpha_);
  return dx;
}

// ---------------------------------------------------------------- pooling

template <typename T>
std::vector<int> MaxPool2d<T>::output_shape(const std::vector<int>& in) const {
  require(in.size() == 4 && in[2] >= size_ && in[3] >= size_,
          fmt::format("{}: bad input {}", describe(), shape_string(in)));
  return {in[0], in[1], in[2] / size_, in[3] / size_};
}

template <typename T>
std::string MaxPool2d<T>::describe() const {
  return fmt::format("maxpool({})", size_);
}

template <typename T>
Tensor<T> MaxPool2d<T>::forward(const Tensor<T>& x, bool) {
  const auto shape = output_shape(x.shape);
  in_shape_ = x.shape;
  Tensor<T> y(shape);
  argmax_.assign(y.size(), 0);
  const int planes = shape[0] * shape[1], h = x.dim(2), w = x.dim(3), oh = shape[2], ow = shape[3];
  for (int pl = 0; pl < planes; ++pl) {
    const std::size_t base = static_cast<std::size_t>(pl) * h * w;
    for (int oy = 0; oy < oh; ++oy)
      for (int ox = 0; ox < ow; ++ox) {
        std::size_t best = base + static_cast<std::size_t>(oy * size_) * w + ox * size_;
        for (int dy = 0; dy < size_; ++dy)
          for (int dx = 0; dx < size_; ++dx) {
            const std::size_t idx = base + static_cast<std::size_t>(oy * size_ + dy) * w + ox * size_ + dx;
            if (x.data[idx] > x.data[best]) best = idx;
          }
        const std::size_t o = (static_cast<std::size_t>(pl) * oh + oy) * ow + ox;
        y.data[o] = x.data[best];
        argmax_[o] = static_cast<std::uint32_t>(best);
      }
  }
  return y;
}

template <typename T>
Tensor<T> MaxPool2d<T>::backward(const Tensor<T>& dy) {
  require(dy.size() == argmax_.size(), "maxpool: gradient shape mismatch");
  Tensor<T> dx(in_shape_);
  for (std::size_t i = 0; i < dy.size(); ++i) dx.data[argmax_[i]] += dy.data[i];
  return dx;
}

// ---------------------------------------------------------------- batch norm

template <typename T>
BatchNorm2d<T>::BatchNorm2d(int channels, T momentum, T eps)
    : c_(channels), momentum_(momentum), eps_(eps), gamma_("gamma", {channels}),
      beta_("beta", {channels}), running_mean_("running_mean", {channels}),
      running_var_("running_var", {channels}) {
  std::fill(gamma_.value.begin(), gamma_.value.end(), T(1));
  std::fill(running_var_.value.begin(), running_var_.value.end(), T(1));
}

template <typename T>
std::string BatchNorm2d<T>::describe() const {
  return fmt::format("batchnorm({})", c_);
}

template <typename T>
Tensor<T> BatchNorm2d<T>::forward(const Tensor<T>& x, bool train) {
  require(x.rank() == 4 && x.dim(1) == c_, fmt::format("{}: bad input {}", describe(), shape_string(x.shape)));
  const int n = x.dim(0), hw = x.dim(2) * x.dim(3);
  const double count = static_cast<double>(n) * hw;
  Tensor<T> y(x.shape);
  xhat_ = Tensor<T>(x.shape);
  inv_std_.assign(static_cast<std::size_t>(c_), T(0));
  trained_batch_ = train;
  for (int c = 0; c < c_; ++c) {
    double mean, var;
    if (train) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const T* p = x.ptr() + (static_cast<std::size_t>(i) * c_ + c) * hw;
        for (int j = 0; j < hw; ++j) s += p[j];
      }
      mean = s / count;
      double v = 0.0;
      for (int i = 0; i < n; ++i) {
        const T* p = x.ptr() + (static_cast<std::size_t>(i) * c_ + c) * hw;
        for (int j = 0; j < hw; ++j) v += (p[j] - mean) * (p[j] - mean);
      }
      var = v / count;
      const double unbiased = count > 1 ? v / (count - 1) : var;
      running_mean_.value[c] = static_cast<T>((1 - momentum_) * running_mean_.value[c] + momentum_ * mean);
      running_var_.value[c] = static_cast<T>((1 - momentum_) * running_var_.value[c] + momentum_ * unbiased);
    } else {
      mean = running_mean_.value[c];
      var = running_var_.value[c];
    }
    const T inv = static_cast<T>(1.0 / std::sqrt(var + eps_));
    inv_std_[c] = inv;
    for (int i = 0; i < n; ++i) {
      const std::size_t off = (static_cast<std::size_t>(i) * c_ + c) * hw;
      for (int j = 0; j < hw; ++j) {
        const T xh = static_cast<T>((x.data[off + j] - mean) * inv);
        xhat_.data[off + j] = xh;
        y.data[off + j] = gamma_.value[c] * xh + beta_.value[c];
      }
    }
  }
  return y;
}

template <typename T>
Tensor<T> BatchNorm2d<T>::backward(const Tensor<T>& dy) {
  require(dy.shape == xhat_.shape, "batchnorm: gradient shape mismatch");
  const int n = dy.dim(0), hw = dy.dim(2) * dy.dim(3);
  const double count = static_cast<double>(n) * hw;
  Tensor<T> dx(dy.shape);
  for (int c = 0; c < c_; ++c) {
    double sum_dy = 0.0, sum_dy_xh = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::size_t off = (static_cast<std::size_t>(i) * c_ + c) * hw;
      for (int j = 0; j < hw; ++j) {
        sum_dy += dy.data[off + j];
        sum_dy_xh += dy.data[off + j] * xhat_.data[off + j];
      }
    }
    gamma_.grad[c] += static_cast<T>(sum_dy_xh);
    beta_.grad[c] += static_cast<T>(sum_dy);
    const double g = gamma_.value[c] * inv_std_[c];
    for (int i = 0; i < n; ++i) {
      const std::size_t off = (static_cast<std::size_t>(i) * c_ + c) * hw;
      for (int j = 0; j < hw; ++j) {
        const double d = dy.data[off + j];
        dx.data[off + j] = static_cast<T>(
            trained_batch_ ? g * (d - sum_dy / count - xhat_.data[off + j] * sum_dy_xh / count)
                           : g * d);
      }
    }
  }
  return dx;
}

// ---------------------------------------------------------------- flatten / sequential

template <typename T>
std::vector<int> Flatten<T>::output_shape(const std::vector<int>& in) const {
  require(!in.empty(), "flatten: empty shape");
  int f = 1;
  for (std::size_t i = 1; i < in.size(); ++i) f *= in[i];
  return {in[0], f};
}

template <typename T>
Tensor<T> Flatten<T>::forward(const Tensor<T>& x, bool) {
  in_shape_ = x.shape;
  Tensor<T> y = x;
  y.shape = output_shape(x.shape);
  return y;
}

template <typename T>
Tensor<T> Flatten<T>::backward(const Tensor<T>& dy) {
  Tensor<T> dx = dy;
  dx.shape = in_shape_;
  return dx;
}

template <typename T>
Tensor<T> Sequential<T>::forward(const Tensor<T>& x, bool train) {
  Tensor<T> h = x;
  for (auto& l : layers_) h = l->forward(h, train);
  return h;
}

template <typename T>
Tensor<T> Sequential<T>::backward(const Tensor<T>& grad_out) {
  Tensor<T> g = grad_out;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->backward(g);
  return g;
}

template <typename T>
std::vector<Param<T>*> Sequential<T>::params() {
  std::vector<Param<T>*> out;
  for (auto& l : layers_)
    for (auto* p : l->params()) out.push_back(p);
  return out;
}

template <typename T>
std::vector<int> Sequential<T>::output_shape(std::vector<int> input) const {
  for (const auto& l : layers_) input = l->output_shape(input);
  return input;
}

template <typename T>
std::string Sequential<T>::describe() const {
  std::vector<std::string> parts;
  for (const auto& l : layers_) parts.push_back(l->describe());
  return fmt::format("{}", fmt::join(parts, " > "));
}

// ---------------------------------------------------------------- init / optim

void orthogonal_init(std::vector<double>& w, int rows, int cols, double gain, util::Rng& rng) {
  // Orthonormalize the shorter dimension's vectors with two passes of
  // modified Gram-Schmidt.
  const bool by_rows = rows <= cols;
  const int nvec = by_rows ? rows : cols, len = by_rows ? cols : rows;
  std::vector<std::vector<double>> v(static_cast<std::size_t>(nvec), std::vector<double>(len));
  for (auto& vec : v)
    for (double& x : vec) x = rng.normal();
  for (int i = 0; i < nvec; ++i) {
    auto& vi = v[i];
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < i; ++j) {
        double d = 0.0;
        for (int t = 0; t < len; ++t) d += vi[t] * v[j][t];
        for (int t = 0; t < len; ++t) vi[t] -= d * v[j][t];
      }
    double norm = 0.0;
    for (double x : vi) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : vi) x /= norm;
  }
  w.assign(static_cast<std::size_t>(rows) * cols, 0.0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      w[static_cast<std::size_t>(r) * cols + c] = gain * (by_rows ? v[r][c] : v[c][r]);
}

template <typename T>
void orthogonal_init(Param<T>& weight, double gain, util::Rng& rng) {
  require(weight.shape.size() == 2, "orthogonal_init: weight must be 2-D");
  std::vector<double> w;
  orthogonal_init(w, weight.shape[0], weight.shape[1], gain, rng);
  for (std::size_t i = 0; i < w.size(); ++i) weight.value[i] = static_cast<T>(w[i]);
}

template <typename T>
void zero_grad(const std::vector<Param<T>*>& params) {
  for (auto* p : params) std::fill(p->grad.begin(), p->grad.end(), T(0));
}

template <typename T>
double clip_grad_norm(const std::vector<Param<T>*>& params, double max_norm) {
  double sq = 0.0;
  for (auto* p : params)
    for (T g : p->grad) sq += static_cast<double>(g) * g;
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    // Rounding the scaled values back to T can push the norm a few ulps past
    // max_norm; shrink until it holds.
    double scale = max_norm / norm;
    for (int attempt = 0; attempt < 8; ++attempt) {
      double post = 0.0;
      for (auto* p : params)
        for (T g : p->grad) {
          const T s = static_cast<T>(g * scale);
          post += static_cast<double>(s) * s;
        }
      if (std::sqrt(post) <= max_norm) break;
      scale *= 1.0 - 4.0 * std::numeric_limits<T>::epsilon();
    }
    for (auto* p : params)
      for (T& g : p->grad) g = static_cast<T>(g * scale);
  }
  return norm;
}

template <typename T>
Adam<T>::Adam(std::vector<Param<T>*> params, double lr, double beta1, double beta2, double eps)
    : params_(std::move(params)), frozen_(params_.size(), false), lr_(lr), b1_(beta1), b2_(beta2), eps_(eps) {
  for (auto* p : params_) {
    m_.emplace_back(p->value.size(), 0.0);
    v_.emplace_back(p->value.size(), 0.0);
  }
}

template <typename T>
void Adam<T>::freeze(const Param<T>* p) {
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i] == p) frozen_[i] = true;
}

template <typename T>
void Adam<T>::step() {
  ++t_;
  const double c1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    if (frozen_[k]) continue;
    auto& p = *params_[k];
    auto& m = m_[k];
    auto& v = v_[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i];
      m[i] = b1_ * m[i] + (1.0 - b1_) * g;
      v[i] = b2_ * v[i] + (1.0 - b2_) * g * g;
      p.value[i] = static_cast<T>(p.value[i] - lr_ * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps_));
    }
  }
}

#define TACTILE_NN_INSTANTIATE(T)                                              \
  template class Linear<T>;                                                    \
  template class Conv2d<T>;                                                    \
  template class ReLU<T>;                                                      \
  template class Tanh<T>;                                                      \
  template class ELU<T>;                                                       \
  template class MaxPool2d<T>;                                                 \
  template class BatchNorm2d<T>;                                               \
  template class Flatten<T>;                                                   \
  template class Sequential<T>;                                                \
  template class Adam<T>;                                                      \
  template void orthogonal_init<T>(Param<T>&, double, util::Rng&);             \
  template void zero_grad<T>(const std::vector<Param<T>*>&);                   \
  template double clip_grad_norm<T>(const std::vector<Param<T>*>&, double);

TACTILE_NN_INSTANTIATE(float)
TACTILE_NN_INSTANTIATE(double)

}  // namespace tactile::nn
