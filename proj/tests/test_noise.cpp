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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "support/gen.hpp"
#include "tactile/noise/noise.hpp"

using namespace tactile;

TEST_CASE("noise is deterministic and seed sensitive") {
  noise::NoiseField f{.seed = 5};
  const noise::SimplexNoise a(f), b(f);
  noise::NoiseField g = f;
  g.seed = 6;
  const noise::SimplexNoise c(g);
  util::Rng rng(1);
  int differ = 0;
  for (int k = 0; k < 100; ++k) {
    const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
    CHECK(a(x, y) == b(x, y));
    CHECK(a(x, y) == noise::noise2(f, x, y));
    differ += a(x, y) != c(x, y);
  }
  CHECK(differ > 90);
}

TEST_CASE("noise is bounded by its amplitude") {
  util::Rng rng(2);
  for (int octaves : {1, 2, 4}) {
    const noise::SimplexNoise n({.seed = 9, .frequency = 5, .octaves = octaves, .amplitude = 0.01});
    double peak = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const double v = n(rng.uniform(-10, 10), rng.uniform(-10, 10));
      CHECK(std::abs(v) <= 0.01);
      peak = std::max(peak, std::abs(v));
    }
    CHECK(peak > 0.003);
  }
}

TEST_CASE("noise is numerically smooth") {
  const noise::SimplexNoise n({.seed = 3});
  util::Rng rng(4);
  int bad = 0, counted = 0;
  for (int k = 0; k < 1000; ++k) {
    const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
    const double s1 = (n(x + 1e-5, y) - n(x - 1e-5, y)) / 2e-5;
    const double s2 = (n(x + 1e-6, y) - n(x - 1e-6, y)) / 2e-6;
    if (std::abs(s1) < 1e-4) continue;  // flat spots make the ratio meaningless
    ++counted;
    bad += std::abs(s1 - s2) > 0.05 * std::abs(s1);
  }
  CHECK(counted > 900);
  CHECK(bad == 0);
}

TEST_CASE("noise mean is near zero over a large sample") {
  const noise::SimplexNoise n({.seed = 12, .frequency = 5, .octaves = 2, .amplitude = 1.0});
  util::Rng rng(6);
  double sum = 0.0;
  const int count = 1000000;
  for (int k = 0; k < count; ++k) sum += n(rng.uniform(0, 51.2), rng.uniform(0, 51.2));
  CHECK(std::abs(sum / count) < 0.01);
}

TEST_CASE("lattice translation preserves value statistics") {
  const noise::SimplexNoise n({.seed = 21, .frequency = 1, .octaves = 1, .amplitude = 1.0});
  std::vector<double> a, b;
  util::Rng rng(8);
  for (int k = 0; k < 200000; ++k) {
    const double x = rng.uniform(0, 64), y = rng.uniform(0, 64);
    a.push_back(n(x, y));
    b.push_back(n(x + 1.0, y));
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  // Two-sample Kolmogorov-Smirnov style comparison of the quantiles.
  double worst = 0.0;
  for (int q = 1; q < 20; ++q) {
    const std::size_t i = a.size() * q / 20;
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  CHECK(worst < 0.02);
}

TEST_CASE("surface generation") {
  const auto flat = noise::generate_surface({.seed = 1, .amplitude = 0.0});
  for (double h : flat.grid->heights()) CHECK(h == 0.0);
  const auto s1 = noise::generate_surface({.seed = 1});
  const auto s2 = noise::generate_surface({.seed = 2});
  CHECK(s1.grid->heights() != s2.grid->heights());
  CHECK(s1.grid->nx() == 64);
  CHECK(s1.grid->x0() == doctest::Approx(-0.15));
  CHECK(s1.grid->cell() * 63 == doctest::Approx(0.30));
  const auto& g = *s1.grid;
  for (int iy = 1; iy + 1 < g.ny(); iy += 5) {
    for (int ix = 1; ix + 1 < g.nx(); ix += 5) {
      const double gx = (g.node(ix + 1, iy) - g.node(ix - 1, iy)) / (2 * g.cell());
      const double gy = (g.node(ix, iy + 1) - g.node(ix, iy - 1)) / (2 * g.cell());
      const geom::Vec3 expect = geom::Vec3(-gx, -gy, 1).normalized();
      CHECK((s1.normal(g.x0() + ix * g.cell(), g.y0() + iy * g.cell()) - expect).norm() < 1e-6);
    }
  }
  CHECK_THROWS(noise::generate_surface({}, 0.3, 8));
}

TEST_CASE("trajectory generation") {
  const auto straight = noise::generate_trajectory({.amplitude = 0.0}, 0.30, 16);
  REQUIRE(straight.size() == 16);
  for (const auto& p : straight) {
    CHECK(p.position.y() == 0.0);
    CHECK(std::abs(p.euler_deg().z()) < 1e-12);
  }
  const auto wavy = noise::generate_trajectory({.seed = 4, .frequency = 10, .amplitude = 0.02}, 0.30, 16);
  CHECK(wavy.front().position.norm() == 0.0);
  for (std::size_t i = 0; i < wavy.size(); ++i) {
    CHECK(std::abs(wavy[i].position.x() - i * 0.30 / 15) < 1e-9);
    const std::size_t a = i + 1 < wavy.size() ? i : i - 1;
    const auto d = wavy[a + 1].position - wavy[a].position;
    CHECK(std::abs(wavy[i].euler_deg().z() - geom::rad2deg(std::atan2(d.y(), d.x()))) < 1e-6);
  }
  CHECK_THROWS(noise::generate_trajectory({}, 0.3, 1));
}
