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
#include <vector>

#include "doctest.h"
#include "tactile/nn/layers.hpp"
#include "tactile/rl/grad_check.hpp"
#include "tactile/util/rng.hpp"

using namespace tactile;
using namespace tactile::nn;

namespace {

template <typename T>
Tensor<T> random_tensor(util::Rng& rng, std::vector<int> shape, double lo = -1.0, double hi = 1.0) {
  Tensor<T> t(std::move(shape));
  for (auto& v : t.data) v = static_cast<T>(rng.uniform(lo, hi));
  return t;
}

template <typename T>
void randomize(const std::vector<Param<T>*>& params, util::Rng& rng, double scale = 0.5) {
  for (auto* p : params)
    if (p->name.find("running") == std::string::npos)
      for (auto& v : p->value) v = static_cast<T>(rng.uniform(-scale, scale));
}

// Direct convolution used as the oracle for the im2col path.
std::vector<double> naive_conv(const Tensor<double>& x, const std::vector<double>& w,
                               const std::vector<double>& b, int cout, int k, int s, int p) {
  const int n = x.dim(0), cin = x.dim(1), h = x.dim(2), wd = x.dim(3);
  const int oh = (h + 2 * p - k) / s + 1, ow = (wd + 2 * p - k) / s + 1;
  std::vector<double> y(static_cast<std::size_t>(n) * cout * oh * ow, 0.0);
  for (int i = 0; i < n; ++i)
    for (int o = 0; o < cout; ++o)
      for (int r = 0; r < oh; ++r)
        for (int c = 0; c < ow; ++c) {
          double acc = b[o];
          for (int ci = 0; ci < cin; ++ci)
            for (int kr = 0; kr < k; ++kr)
              for (int kc = 0; kc < k; ++kc) {
                const int ir = r * s - p + kr, ic = c * s - p + kc;
                if (ir < 0 || ir >= h || ic < 0 || ic >= wd) continue;
                acc += w[((o * cin + ci) * k + kr) * k + kc] *
                       x.data[((static_cast<std::size_t>(i) * cin + ci) * h + ir) * wd + ic];
              }
          y[((static_cast<std::size_t>(i) * cout + o) * oh + r) * ow + c] = acc;
        }
  return y;
}

}  // namespace

TEST_CASE("conv2d matches direct convolution over random shapes") {
  util::Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int cin = rng.uniform_int(1, 3), cout = rng.uniform_int(1, 4);
    const int k = rng.uniform_int(1, 5), s = rng.uniform_int(1, 3), p = rng.uniform_int(0, 2);
    const int h = rng.uniform_int(k, 12), w = rng.uniform_int(k, 12);
    Conv2d<double> conv(cin, cout, k, s, p);
    randomize(conv.params(), rng);
    auto x = random_tensor<double>(rng, {2, cin, h, w});
    const auto y = conv.forward(x, false);
    const auto ref = naive_conv(x, conv.params()[0]->value, conv.params()[1]->value, cout, k, s, p);
    REQUIRE(y.size() == ref.size());
    CHECK(y.shape == conv.output_shape(x.shape));
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(y.data[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
}

TEST_CASE("float and double layers agree") {
  util::Rng rng(5);
  Conv2d<float> cf(2, 3, 3, 2, 1);
  Conv2d<double> cd(2, 3, 3, 2, 1);
  randomize(cf.params(), rng);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < cf.params()[i]->value.size(); ++j)
      cd.params()[i]->value[j] = cf.params()[i]->value[j];
  auto xf = random_tensor<float>(rng, {3, 2, 9, 9});
  Tensor<double> xd(xf.shape);
  for (std::size_t i = 0; i < xf.size(); ++i) xd.data[i] = xf.data[i];
  const auto yf = cf.forward(xf, false);
  const auto yd = cd.forward(xd, false);
  for (std::size_t i = 0; i < yf.size(); ++i) CHECK(yf.data[i] == doctest::Approx(yd.data[i]).epsilon(1e-5));
}

TEST_CASE("linear-only net with quadratic loss has exact finite differences") {
  util::Rng rng(3);
  Sequential<double> net;
  net.add<Linear<double>>(5, 4);
  net.add<Linear<double>>(4, 2);
  randomize(net.params(), rng);
  const auto x = random_tensor<double>(rng, {6, 5});
  const auto t = random_tensor<double>(rng, {6, 2});
  // Exact for any step on a quadratic; a larger step keeps double rounding
  // on near-zero entries below the bound.
  const auto r = rl::grad_check(net, x, t, true, 1e-3);
  CHECK(r.checked == 5 * 4 + 4 + 4 * 2 + 2);
  CHECK(r.max_rel_error < 1e-8);
}

TEST_CASE("every layer type passes the finite-difference check") {
  util::Rng rng(21);
  SUBCASE("conv, tanh, elu, flatten, linear") {
    Sequential<double> net;
    net.add<Conv2d<double>>(2, 3, 3, 1, 1);
    net.add<Tanh<double>>();
    net.add<Conv2d<double>>(3, 2, 3, 2, 0);
    net.add<ELU<double>>();
    net.add<Flatten<double>>();
    net.add<Linear<double>>(2 * 3 * 3, 3);
    randomize(net.params(), rng);
    const auto x = random_tensor<double>(rng, {2, 2, 7, 7});
    const auto t = random_tensor<double>(rng, {2, 3});
    CHECK(rl::grad_check(net, x, t).max_rel_error < 1e-6);
  }
  SUBCASE("batch norm in training mode, then max pool") {
    Sequential<double> net;
    net.add<Conv2d<double>>(1, 2, 3, 1, 1);
    net.add<BatchNorm2d<double>>(2);
    net.add<ELU<double>>();
    net.add<MaxPool2d<double>>(2);
    net.add<Flatten<double>>();
    net.add<Linear<double>>(2 * 3 * 3, 2);
    randomize(net.params(), rng);
    const auto x = random_tensor<double>(rng, {3, 1, 6, 6});
    const auto t = random_tensor<double>(rng, {3, 2});
    CHECK(rl::grad_check(net, x, t, true).max_rel_error < 1e-4);
  }
}

TEST_CASE("batch norm normalizes in training and uses running stats in eval") {
  util::Rng rng(8);
  BatchNorm2d<double> bn(3);
  const auto x = random_tensor<double>(rng, {4, 3, 5, 5}, 2.0, 6.0);
  const auto y = bn.forward(x, true);
  for (int c = 0; c < 3; ++c) {
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 25; ++j) {
        const double v = y.data[(i * 3 + c) * 25 + j];
        s += v;
        s2 += v * v;
      }
    CHECK(std::fabs(s / 100.0) < 1e-12);
    CHECK(s2 / 100.0 == doctest::Approx(1.0).epsilon(1e-4));
  }
  auto p = bn.params();
  CHECK(p[2]->value[0] != 0.0);  // running mean moved
  const auto e1 = bn.forward(x, false);
  const auto e2 = bn.forward(x, false);
  CHECK(e1.data == e2.data);
}

TEST_CASE("max pool routes gradient to the argmax") {
  MaxPool2d<double> pool(2);
  Tensor<double> x({1, 1, 2, 4});
  x.data = {1, 5, 2, 0, 3, 4, 7, 1};
  const auto y = pool.forward(x, true);
  CHECK(y.data == std::vector<double>{5, 7});
  Tensor<double> g({1, 1, 1, 2});
  g.data = {1.0, 2.0};
  const auto dx = pool.backward(g);
  CHECK(dx.data == std::vector<double>{0, 1, 0, 0, 0, 0, 2, 0});
}

TEST_CASE("orthogonal init: |W^T W - I| below 1e-5 for random shapes") {
  util::Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = rng.uniform_int(1, 70), cols = rng.uniform_int(1, 70);
    Param<float> w("w", {rows, cols});
    orthogonal_init(w, 1.0, rng);
    // Gram of the smaller side.
    const bool by_rows = rows <= cols;
    const int m = by_rows ? rows : cols, len = by_rows ? cols : rows;
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double dot = 0.0;
        for (int k = 0; k < len; ++k) {
          const double va = by_rows ? w.value[a * cols + k] : w.value[k * cols + a];
          const double vb = by_rows ? w.value[b * cols + k] : w.value[k * cols + b];
          dot += va * vb;
        }
        worst = std::max(worst, std::fabs(dot - (a == b ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-5);
  }
  Param<double> g("g", {8, 8});
  orthogonal_init(g, 2.0, rng);
  double n2 = 0.0;
  for (int k = 0; k < 8; ++k) n2 += g.value[k] * g.value[k];
  CHECK(n2 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("gradient clipping bounds the global norm") {
  util::Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    Param<float> a("a", {rng.uniform_int(1, 50)}), b("b", {rng.uniform_int(1, 50)});
    const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
    for (auto* p : {&a, &b})
      for (auto& g : p->grad) g = static_cast<float>(rng.normal(0.0, scale));
    const double pre = clip_grad_norm<float>({&a, &b}, 0.5);
    double post = 0.0;
    for (auto* p : {&a, &b})
      for (float g : p->grad) post += static_cast<double>(g) * g;
    post = std::sqrt(post);
    CHECK(post <= 0.5 + 1e-9);
    if (pre <= 0.5) CHECK(post == doctest::Approx(pre).epsilon(1e-6));
  }
}

TEST_CASE("adam minimizes a quadratic and honors frozen params") {
  Param<double> x("x", {3}), frozen("f", {1});
  x.value = {3.0, -2.0, 1.0};
  frozen.value = {7.0};
  Adam<double> opt({&x, &frozen}, 0.05);
  opt.freeze(&frozen);
  for (int it = 0; it < 2000; ++it) {
    zero_grad<double>({&x, &frozen});
    for (int i = 0; i < 3; ++i) x.grad[i] = 2.0 * (x.value[i] - 0.5);
    frozen.grad[0] = 1.0;
    opt.step();
  }
  for (double v : x.value) CHECK(v == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(frozen.value[0] == 7.0);
}

TEST_CASE("layers reject mismatched input shapes") {
  Linear<float> lin(4, 2);
  CHECK_THROWS_AS(lin.forward(Tensor<float>({3, 5}), false), std::invalid_argument);
  Conv2d<float> conv(2, 2, 3, 1);
  CHECK_THROWS_AS(conv.forward(Tensor<float>({1, 3, 8, 8}), false), std::invalid_argument);
}
