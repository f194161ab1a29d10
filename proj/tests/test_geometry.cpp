// Copyright 2026 The vrmcast Authors
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

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vrmcast/geometry.hpp"

using namespace vrmcast;

TEST_CASE("direction_center on a 4x2 grid") {
  VideoConfig cfg{4, 2, 4, 2, 90.0, 90.0, 0.0};
  auto [az1, el1] = direction_center({1, 1}, cfg);
  CHECK(az1 == doctest::Approx(45.0));
  CHECK(el1 == doctest::Approx(45.0));
  auto [az2, el2] = direction_center({4, 2}, cfg);
  CHECK(az2 == doctest::Approx(315.0));
  CHECK(el2 == doctest::Approx(135.0));
}

TEST_CASE("direction_center matches the 30x2 grid spacing") {
  VideoConfig cfg{30, 15, 30, 2, 100.0, 100.0, 15.0};
  auto [az, el] = direction_center({1, 1}, cfg);
  CHECK(az == doctest::Approx(6.0));
  CHECK(el == doctest::Approx(45.0));
}

TEST_CASE("direction_center rejects out-of-grid indices") {
  VideoConfig cfg{4, 2, 4, 2, 90.0, 90.0, 0.0};
  CHECK_THROWS_AS(direction_center({0, 1}, cfg), DomainError);
  CHECK_THROWS_AS(direction_center({5, 1}, cfg), DomainError);
  CHECK_THROWS_AS(fov_tiles({1, 3}, cfg), DomainError);
}

TEST_CASE("whole-sphere coverage returns every tile") {
  VideoConfig cfg{4, 2, 4, 2, 360.0, 180.0, 90.0};
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 2; ++c)
      CHECK(fov_tiles({r, c}, cfg).size() == 8);
}

TEST_CASE("exact tile alignment yields exactly that tile") {
  // 90x90 tiles, FoV exactly one tile, direction centered on a tile center:
  // boundary contact has zero area and must not pull in neighbors.
  VideoConfig cfg{4, 2, 4, 2, 90.0, 90.0, 0.0};
  TileSet t = fov_tiles({1, 1}, cfg);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == 1);
  TileSet t2 = fov_tiles({3, 2}, cfg);
  REQUIRE(t2.size() == 1);
  CHECK(t2[0] == 7);
}

TEST_CASE("130x130 FoV on the 30x15 grid matches the rasterization oracle") {
  VideoConfig cfg{30, 15, 30, 2, 100.0, 100.0, 15.0};
  for (int row : {1, 7, 16, 30})
    for (int col : {1, 2}) {
      ViewDirection dir{row, col};
      CHECK(fov_tiles(dir, cfg) == testing::raster_fov_tiles(dir, cfg));
    }
}

TEST_CASE("fov_tiles is non-empty and monotone in the margin") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> grid(1, 12);
  std::uniform_real_distribution<double> ang(5.0, 170.0);
  for (int trial = 0; trial < 100; ++trial) {
    VideoConfig cfg;
    cfg.v_h = grid(rng);
    cfg.v_v = grid(rng);
    cfg.m_h = grid(rng);
    cfg.m_v = grid(rng);
    cfg.fov_h_deg = ang(rng);
    cfg.fov_v_deg = ang(rng);
    cfg.margin_deg = 0.5 * ang(rng);
    ViewDirection dir{1 + static_cast<int>(rng() % cfg.m_h),
                      1 + static_cast<int>(rng() % cfg.m_v)};
    TileSet small = fov_tiles(dir, cfg);
    CHECK(!small.empty());
    VideoConfig larger = cfg;
    larger.margin_deg += ang(rng) * 0.3;
    TileSet big = fov_tiles(dir, larger);
    CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
  }
}

TEST_CASE("horizontal wraparound crosses the 0/360 seam") {
  // 90-degree columns, direction centered at azimuth 22.5 with a 100-degree
  // window spans [-27.5, 72.5]: column 1 plus column 4 through the seam.
  VideoConfig cfg{4, 1, 8, 1, 100.0, 170.0, 0.0};
  TileSet t = fov_tiles({1, 1}, cfg);
  CHECK(t == TileSet{1, 4});
  // matches the oracle, which wraps sample-by-sample instead of by interval
  CHECK(t == testing::raster_fov_tiles({1, 1}, cfg));
}

TEST_CASE("rotating a symmetric grid by whole columns permutes tiles only") {
  // m_h == v_h: moving one direction step shifts the window by exactly one
  // tile column, so tile counts are invariant and a full period of steps
  // returns the original set.
  VideoConfig cfg{8, 4, 8, 4, 100.0, 80.0, 15.0};
  TileSet base = fov_tiles({1, 2}, cfg);
  for (int r = 2; r <= 8; ++r)
    CHECK(fov_tiles({r, 2}, cfg).size() == base.size());
}

TEST_CASE("200 random configurations match the rasterization oracle") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> vdist(2, 18);
  std::uniform_int_distribution<int> mdist(1, 20);
  std::uniform_real_distribution<double> fov(20.0, 200.0);
  std::uniform_real_distribution<double> mar(0.0, 40.0);
  int done = 0;
  while (done < 200) {
    VideoConfig cfg;
    cfg.v_h = vdist(rng);
    cfg.v_v = vdist(rng);
    cfg.m_h = mdist(rng);
    cfg.m_v = mdist(rng);
    cfg.fov_h_deg = fov(rng);
    cfg.fov_v_deg = fov(rng);
    cfg.margin_deg = mar(rng);
    ViewDirection dir{1 + static_cast<int>(rng() % cfg.m_h),
                      1 + static_cast<int>(rng() % cfg.m_v)};
    // skip configurations with sub-resolution slivers the oracle cannot see
    if (!testing::raster_safe(dir, cfg)) continue;
    CHECK(fov_tiles(dir, cfg) == testing::raster_fov_tiles(dir, cfg));
    ++done;
  }
}
