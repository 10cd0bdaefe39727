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

#include "fixtures.hpp"

#include <sstream>

namespace crowdweb::testing {
namespace {

using namespace std::chrono_literals;

struct Visit {
  int day;
  int hour;
  int minute;
  std::string category;
  double latitude;
  double longitude;
};

constexpr double kEateryLat = 40.7555, kEateryLon = -73.9855;
constexpr double kShopsLat = 40.7611, kShopsLon = -73.9722;
constexpr double kGymLat = 40.7233, kGymLon = -73.9777;
constexpr double kLibraryLat = 40.8044, kLibraryLon = -73.9555;

std::vector<CheckIn> build(const std::string& user, const std::vector<Visit>& visits) {
  constexpr int tz = -240;
  std::vector<CheckIn> out;
  for (const Visit& v : visits) {
    const Timestamp local = Timestamp{Date{2012y / 4 / 10} + std::chrono::days{v.day}} + std::chrono::hours{v.hour} +
                            std::chrono::minutes{v.minute};
    out.push_back(CheckIn{user, "venue-" + v.category, "cat-" + v.category, v.category, v.latitude, v.longitude, tz,
                          local - std::chrono::minutes{tz}});
  }
  return out;
}

}  // namespace

std::vector<CheckIn> derived_user_checkins() {
  return build("d", {{0, 12, 5, "Eatery", kEateryLat, kEateryLon},
                     {0, 12, 40, "Shops", kShopsLat, kShopsLon},
                     {0, 13, 10, "Gym", kGymLat, kGymLon},
                     {1, 12, 5, "Eatery", kEateryLat, kEateryLon},
                     {1, 13, 10, "Gym", kGymLat, kGymLon},
                     {2, 11, 30, "Shops", kShopsLat, kShopsLon},
                     {2, 12, 5, "Eatery", kEateryLat, kEateryLon},
                     {2, 13, 10, "Gym", kGymLat, kGymLon}});
}

std::vector<CheckIn> mate_user_checkins() {
  return build("m", {{0, 12, 20, "Eatery", kEateryLat, kEateryLon},
                     {0, 13, 30, "Gym", kGymLat, kGymLon},
                     {1, 12, 25, "Eatery", kEateryLat, kEateryLon},
                     {1, 13, 40, "Gym", kGymLat, kGymLon},
                     {2, 12, 15, "Eatery", kEateryLat, kEateryLon},
                     {2, 13, 20, "Gym", kGymLat, kGymLon}});
}

std::vector<CheckIn> third_user_checkins() {
  return build("t", {{0, 12, 15, "Eatery", kEateryLat, kEateryLon},
                     {0, 13, 45, "Library", kLibraryLat, kLibraryLon},
                     {1, 12, 10, "Eatery", kEateryLat, kEateryLon},
                     {1, 13, 50, "Library", kLibraryLat, kLibraryLon},
                     {2, 12, 30, "Eatery", kEateryLat, kEateryLon},
                     {2, 13, 55, "Library", kLibraryLat, kLibraryLon}});
}

Dataset two_user_dataset() {
  std::vector<CheckIn> checkins = derived_user_checkins();
  const auto mate = mate_user_checkins();
  checkins.insert(checkins.end(), mate.begin(), mate.end());
  IngestOptions options;
  options.rule.min_days = 2;
  return ingest(std::move(checkins), options);
}

std::string to_tsv(const std::vector<CheckIn>& checkins) {
  std::ostringstream out;
  write_checkins(out, checkins);
  return out.str();
}

}  // namespace crowdweb::testing
