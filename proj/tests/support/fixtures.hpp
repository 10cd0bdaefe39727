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

#include <string>
#include <vector>

#include "crowdweb/dataset.hpp"

// A small hand-built cohort with known patterns and crowds.
//
//   d  three days: Eatery Shops Gym / Eatery Gym / Shops Eatery Gym
//   m  three days: Eatery Gym, sharing d's Eatery cell at noon
//   t  three days: Eatery Library, uploaded later in service tests
//
// Eatery visits fall in slot 12 inside kSharedCell; Gym visits in slot 13.
namespace crowdweb::testing {

inline constexpr const char* kSharedCell = "g10000_4075_-7399";
inline constexpr const char* kGymCell = "g10000_4072_-7398";
inline constexpr const char* kLibraryCell = "g10000_4080_-7396";

std::vector<CheckIn> derived_user_checkins();
std::vector<CheckIn> mate_user_checkins();
std::vector<CheckIn> third_user_checkins();

/// d and m ingested with min_days 2 so three qualifying days suffice.
Dataset two_user_dataset();

std::string to_tsv(const std::vector<CheckIn>& checkins);

}  // namespace crowdweb::testing
