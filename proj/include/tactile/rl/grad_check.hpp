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

#include <cstddef>
#include <string>

#include "tactile/nn/tensor.hpp"
#include "tactile/rl/policy.hpp"

namespace tactile::rl {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::string worst;  // "param[index]"
};

// Compares backward() against central differences for the loss
// 0.5 |mean - m*|^2 + 0.5 (value - v*)^2 with fixed targets. ReLU inputs
// within `nudge` of zero are pushed out to +-nudge once and held there, so
// kinks are never straddled. Relative error is |a - n| / max(|a|, |n|, 1e-6).
GradCheckResult grad_check(ActorCritic<double>& net, const nn::Tensor<double>& images,
                           const nn::Tensor<double>& state, double h = 1e-5, double nudge = 1e-3);

// Same check for a plain layer stack and the loss 0.5 |y - t|^2.
GradCheckResult grad_check(nn::Sequential<double>& net, const nn::Tensor<double>& x,
                           const nn::Tensor<double>& target, bool train = true, double h = 1e-5);

}  // namespace tactile::rl
