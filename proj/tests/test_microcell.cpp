/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include <gtest/gtest.h>

#include <random>

#include "crowdweb/error.hpp"
#include "crowdweb/microcell.hpp"

namespace crowdweb {
namespace {

TEST(AssignCell, HandComputedBounds) {
  // floor(40.7128 / 0.01) = 4071, floor(-74.0060 / 0.01) = -7401
  const std::string id = assign_cell(40.7128, -74.0060, GridPrecision(0.01));
  EXPECT_EQ(id, "g10000_4071_-7401");
  const CellBounds bounds = cell_bounds(id);
  EXPECT_DOUBLE_EQ(bounds.lat_min, 40.71);
  EXPECT_DOUBLE_EQ(bounds.lat_max, 40.72);
  EXPECT_DOUBLE_EQ(bounds.lon_min, -74.01);
  EXPECT_DOUBLE_EQ(bounds.lon_max, -74.00);
  EXPECT_TRUE(bounds.contains(40.7128, -74.0060));
}

TEST(AssignCell, CoLocatedPointsShareACell) {
  // -74.000000 lies on a grid line of every precision dividing one degree,
  // so the coarse grid here is 0.03 degrees.
  const GridPrecision coarse(0.03);
  EXPECT_EQ(assign_cell(40.700000, -74.000000, coarse), assign_cell(40.700001, -74.000001, coarse));
  const GridPrecision centi(0.01);
  EXPECT_EQ(assign_cell(40.705000, -74.005000, centi), assign_cell(40.705001, -74.005001, centi));
}

TEST(AssignCell, CoarserCellContainsFinerCell) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lat(-89.9, 89.9);
  std::uniform_real_distribution<double> lon(-179.9, 179.9);
  const GridPrecision coarse(0.1);
  const GridPrecision fine(0.01);
  for (int i = 0; i < 1000; ++i) {
    const double a = lat(rng), b = lon(rng);
    const CellBounds outer = cell_bounds(assign_cell(a, b, coarse));
    const CellBounds inner = cell_bounds(assign_cell(a, b, fine));
    ASSERT_LE(outer.lat_min, inner.lat_min);
    ASSERT_GE(outer.lat_max, inner.lat_max);
    ASSERT_LE(outer.lon_min, inner.lon_min);
    ASSERT_GE(outer.lon_max, inner.lon_max);
  }
}

TEST(AssignCell, EveryPointFallsInItsOwnCell) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> lat(40.5, 41.0);
  std::uniform_real_distribution<double> lon(-74.3, -73.7);
  for (double edge : {0.001, 0.005, 0.01, 0.03}) {
    const GridPrecision precision(edge);
    for (int i = 0; i < 500; ++i) {
      // micro-degree coordinates, as the grid sees them
      const double a = std::round(lat(rng) * 1e6) / 1e6, b = std::round(lon(rng) * 1e6) / 1e6;
      const std::string id = assign_cell(a, b, precision);
      ASSERT_EQ(id, assign_cell(a, b, precision));
      ASSERT_TRUE(cell_bounds(id).contains(a, b)) << id << " " << a << "," << b;
      ASSERT_EQ(cell_precision(id), precision);
    }
  }
}

TEST(AssignCell, RejectsBadInput) {
  EXPECT_THROW(assign_cell(91, 0, GridPrecision(0.01)), ArgumentError);
  EXPECT_THROW(assign_cell(0, -180.5, GridPrecision(0.01)), ArgumentError);
  EXPECT_THROW(GridPrecision(0), ArgumentError);
  EXPECT_THROW(GridPrecision(0.0000001), ArgumentError);
  EXPECT_THROW(cell_bounds("x1_2_3"), ArgumentError);
  EXPECT_THROW(cell_bounds("g10000_12"), ArgumentError);
}

}  // namespace
}  // namespace crowdweb
