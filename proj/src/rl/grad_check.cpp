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

#include "tactile/rl/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace tactile::rl {

namespace {

double rel_error(double a, double n) {
  return std::fabs(a - n) / std::max({std::fabs(a), std::fabs(n), 1e-6});
}

template <class LossFn>
GradCheckResult compare(const std::vector<nn::Param<double>*>& params, LossFn&& loss, double h) {
  GradCheckResult r;
  for (auto* p : params) {
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const double keep = p->value[i];
      p->value[i] = keep + h;
      const double up = loss();
      p->value[i] = keep - h;
      const double down = loss();
      p->value[i] = keep;
      const double e = rel_error(p->grad[i], (up - down) / (2.0 * h));
      ++r.checked;
      if (e > r.max_rel_error) {
        r.max_rel_error = e;
        r.worst = fmt::format("{}[{}]", p->name, i);
      }
    }
  }
  return r;
}

}  // namespace

GradCheckResult grad_check(ActorCritic<double>& net, const nn::Tensor<double>& images,
                           const nn::Tensor<double>& state, double h, double nudge) {
  for (auto* relu : net.relus()) relu->freeze_nudge(nudge);
  auto first = net.forward(images, state, false);
  const int n = first.value.dim(0), a = net.action_dim();
  nn::Tensor<double> tm({n, a}), tv({n, 1});
  for (int i = 0; i < n; ++i) {
    tv.data[i] = std::cos(1.0 + i);
    for (int j = 0; j < a; ++j) tm.data[i * a + j] = 0.5 * std::sin(1.0 + i + 2.0 * j);
  }
  auto loss_of = [&](const ActorCritic<double>::Output& o) {
    double l = 0.0;
    for (std::size_t k = 0; k < o.mean.size(); ++k) l += 0.5 * std::pow(o.mean.data[k] - tm.data[k], 2);
    for (std::size_t k = 0; k < o.value.size(); ++k) l += 0.5 * std::pow(o.value.data[k] - tv.data[k], 2);
    return l;
  };
  const auto params = net.params();
  nn::zero_grad(params);
  auto out = net.forward(images, state, false);
  nn::Tensor<double> dm = out.mean, dv = out.value;
  for (std::size_t k = 0; k < dm.size(); ++k) dm.data[k] -= tm.data[k];
  for (std::size_t k = 0; k < dv.size(); ++k) dv.data[k] -= tv.data[k];
  net.backward(dm, dv);
  auto result = compare(params, [&] { return loss_of(net.forward(images, state, false)); }, h);
  for (auto* relu : net.relus()) relu->freeze_nudge(0.0);
  return result;
}

GradCheckResult grad_check(nn::Sequential<double>& net, const nn::Tensor<double>& x,
                           const nn::Tensor<double>& target, bool train, double h) {
  auto loss_of = [&](const nn::Tensor<double>& y) {
    double l = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) l += 0.5 * std::pow(y.data[k] - target.data[k], 2);
    return l;
  };
  const auto params = net.params();
  nn::zero_grad(params);
  nn::Tensor<double> dy = net.forward(x, train);
  for (std::size_t k = 0; k < dy.size(); ++k) dy.data[k] -= target.data[k];
  net.backward(dy);
  return compare(params, [&] { return loss_of(net.forward(x, train)); }, h);
}

}  // namespace tactile::rl
