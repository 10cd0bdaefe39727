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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace crowdweb {

/// Edge length of a square lat/lon grid cell, held in integer micro-degrees so
/// that cell membership is exact and grids nest whenever one edge divides the other.
class GridPrecision {
 public:
  /// Throws ArgumentError unless 1e-6 <= degrees <= 90 and degrees is a whole
  /// number of micro-degrees.
  explicit GridPrecision(double degrees);

  static GridPrecision from_micro_degrees(std::int64_t micro_degrees);

  double degrees() const noexcept { return static_cast<double>(micro_degrees_) / 1e6; }
  std::int64_t micro_degrees() const noexcept { return micro_degrees_; }

  friend bool operator==(GridPrecision, GridPrecision) = default;
  friend auto operator<=>(GridPrecision, GridPrecision) = default;

 private:
  GridPrecision() = default;
  std::int64_t micro_degrees_ = 0;
};

struct CellBounds {
  double lat_min = 0;
  double lat_max = 0;
  double lon_min = 0;
  double lon_max = 0;

  /// Half-open containment: [lat_min, lat_max) x [lon_min, lon_max).
  bool contains(double latitude, double longitude) const noexcept {
    return latitude >= lat_min && latitude < lat_max && longitude >= lon_min && longitude < lon_max;
  }
  friend bool operator==(const CellBounds&, const CellBounds&) = default;
};

/// Grid cell id for a coordinate, e.g. "g10000_4071_-7401" for
/// (40.7128, -74.0060) at 0.01 degrees. Throws ArgumentError on coordinates
/// outside [-90, 90] x [-180, 180].
std::string assign_cell(double latitude, double longitude, GridPrecision precision);

/// Inverse of assign_cell. Throws ArgumentError on a malformed id.
CellBounds cell_bounds(std::string_view cell_id);

/// Precision encoded in a cell id.
GridPrecision cell_precision(std::string_view cell_id);

}  // namespace crowdweb
