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

#include "crowdweb/microcell.hpp"

#include <charconv>
#include <algorithm>
#include <cmath>

#include "crowdweb/error.hpp"

namespace crowdweb {

namespace {

constexpr std::int64_t kMicro = 1'000'000;

std::int64_t floor_div(std::int64_t value, std::int64_t divisor) {
  std::int64_t quotient = value / divisor;
  if ((value % divisor != 0) && ((value < 0) != (divisor < 0))) --quotient;
  return quotient;
}

bool parse_i64(std::string_view text, std::int64_t& value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

struct CellIndex {
  std::int64_t edge;
  std::int64_t lat;
  std::int64_t lon;
};

CellIndex parse_cell_id(std::string_view cell_id) {
  const auto bad = [&]() -> CellIndex { throw ArgumentError("malformed cell id '" + std::string(cell_id) + "'"); };
  if (cell_id.size() < 2 || cell_id[0] != 'g') return bad();
  const std::string_view rest = cell_id.substr(1);
  const auto first = rest.find('_');
  if (first == std::string_view::npos) return bad();
  const auto second = rest.find('_', first + 1);
  if (second == std::string_view::npos) return bad();
  CellIndex index{};
  if (!parse_i64(rest.substr(0, first), index.edge) ||
      !parse_i64(rest.substr(first + 1, second - first - 1), index.lat) ||
      !parse_i64(rest.substr(second + 1), index.lon) || index.edge <= 0)
    return bad();
  return index;
}

}  // namespace

GridPrecision::GridPrecision(double degrees) {
  if (!std::isfinite(degrees) || degrees < 1e-6 || degrees > 90)
    throw ArgumentError("grid precision must be within [0.000001, 90] degrees");
  const double scaled = degrees * kMicro;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-6 * std::max(1.0, rounded))
    throw ArgumentError("grid precision must be a whole number of micro-degrees");
  micro_degrees_ = static_cast<std::int64_t>(rounded);
}

GridPrecision GridPrecision::from_micro_degrees(std::int64_t micro_degrees) {
  if (micro_degrees < 1 || micro_degrees > 90 * kMicro) throw ArgumentError("grid precision out of range");
  GridPrecision precision;
  precision.micro_degrees_ = micro_degrees;
  return precision;
}

std::string assign_cell(double latitude, double longitude, GridPrecision precision) {
  if (!(latitude >= -90 && latitude <= 90) || !(longitude >= -180 && longitude <= 180))
    throw ArgumentError("coordinate out of range");
  const std::int64_t lat = std::llround(latitude * kMicro);
  const std::int64_t lon = std::llround(longitude * kMicro);
  const std::int64_t edge = precision.micro_degrees();
  return "g" + std::to_string(edge) + "_" + std::to_string(floor_div(lat, edge)) + "_" +
         std::to_string(floor_div(lon, edge));
}

CellBounds cell_bounds(std::string_view cell_id) {
  const CellIndex index = parse_cell_id(cell_id);
  const auto degrees = [](std::int64_t micro) { return static_cast<double>(micro) / kMicro; };
  return CellBounds{degrees(index.lat * index.edge), degrees((index.lat + 1) * index.edge),
                    degrees(index.lon * index.edge), degrees((index.lon + 1) * index.edge)};
}

GridPrecision cell_precision(std::string_view cell_id) {
  return GridPrecision::from_micro_degrees(parse_cell_id(cell_id).edge);
}

}  // namespace crowdweb
