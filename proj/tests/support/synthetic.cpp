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

#include "synthetic.hpp"

#include <cmath>

namespace crowdweb::testing {

std::vector<CheckIn> generate_checkins(const SyntheticUser& user, Date first_day, std::mt19937_64& rng) {
  std::bernoulli_distribution coin;
  std::uniform_int_distribution<int> jitter(0, 5);
  std::vector<CheckIn> checkins;
  for (int d = 0; d < user.days; ++d) {
    const Date day = first_day + std::chrono::days{d};
    for (std::size_t h = 0; h < user.habits.size(); ++h) {
      const PlantedHabit& habit = user.habits[h];
      if (!coin(rng, std::bernoulli_distribution::param_type{habit.probability})) continue;
      const Timestamp local = Timestamp{day} + std::chrono::hours{habit.hour} +
                              std::chrono::minutes{std::min(59, habit.minute + jitter(rng))};
      CheckIn checkin;
      checkin.user_id = user.user_id;
      checkin.venue_id = "v-" + habit.category + "-" + std::to_string(h);
      checkin.category_id = "cat-" + habit.category;
      checkin.category_name = habit.category;
      checkin.latitude = habit.latitude;
      checkin.longitude = habit.longitude;
      checkin.tz_offset_minutes = user.tz_offset_minutes;
      checkin.utc_time = local - std::chrono::minutes{user.tz_offset_minutes};
      checkins.push_back(std::move(checkin));
    }
  }
  return checkins;
}

SequenceDatabase random_database(std::mt19937_64& rng, std::size_t max_sequences, std::size_t max_length,
                                 std::size_t alphabet, std::string user_id) {
  std::uniform_int_distribution<std::size_t> sequences(1, max_sequences);
  std::uniform_int_distribution<std::size_t> length(1, max_length);
  std::uniform_int_distribution<std::size_t> letter(0, alphabet - 1);
  std::uniform_int_distribution<int> slot(6, 9);
  std::uniform_int_distribution<int> cell(0, 2);

  SequenceDatabase db{std::move(user_id), {}};
  const std::size_t count = sequences(rng);
  for (std::size_t s = 0; s < count; ++s) {
    DaySequence day{db.user_id, Date{std::chrono::days{15000 + static_cast<int>(s)}}, {}};
    const std::size_t n = length(rng);
    for (std::size_t i = 0; i < n; ++i)
      day.items.push_back({slot(rng), std::string(1, static_cast<char>('A' + letter(rng))),
                           "g10000_" + std::to_string(4070 + cell(rng)) + "_-7400"});
    db.sequences.push_back(std::move(day));
  }
  return db;
}

std::map<std::vector<std::string>, std::size_t> enumerate_frequent(const SequenceDatabase& db, double min_support) {
  std::map<std::vector<std::string>, std::size_t> counts;
  for (const DaySequence& day : db.sequences) {
    std::set<std::vector<std::string>> distinct;
    const std::size_t n = day.items.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::string> sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) sub.push_back(day.items[i].category);
      distinct.insert(std::move(sub));
    }
    for (const auto& sub : distinct) ++counts[sub];
  }
  const std::size_t needed = threshold_count(min_support, db.size());
  std::erase_if(counts, [&](const auto& entry) { return entry.second < needed; });
  return counts;
}

std::set<std::vector<std::string>> proper_subsequences(const std::vector<std::string>& items) {
  std::set<std::vector<std::string>> out;
  const std::size_t n = items.size();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::vector<std::string> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) sub.push_back(items[i]);
    out.insert(std::move(sub));
  }
  return out;
}

std::set<std::tuple<std::string, std::string, int>> crowd_membership(const std::vector<SequenceDatabase>& users,
                                                                    double min_support) {
  std::set<std::tuple<std::string, std::string, int>> members;
  for (const SequenceDatabase& db : users) {
    std::set<std::pair<std::string, int>> candidates;
    for (const DaySequence& day : db.sequences)
      for (const SequenceItem& item : day.items) candidates.emplace(item.cell_id, item.hour_slot);
    for (const auto& [cell, slot] : candidates) {
      std::size_t days = 0;
      for (const DaySequence& day : db.sequences) {
        bool present = false;
        for (const SequenceItem& item : day.items) present = present || (item.cell_id == cell && item.hour_slot == slot);
        days += present ? 1 : 0;
      }
      // days / size >= min_support, compared in integers at 1/100 resolution.
      const auto percent = static_cast<std::size_t>(std::llround(min_support * 100));
      if (days * 100 >= percent * db.size()) members.emplace(db.user_id, cell, slot);
    }
  }
  return members;
}

std::size_t threshold_count(double min_support, std::size_t size) {
  const auto percent = static_cast<std::size_t>(std::llround(min_support * 100));
  std::size_t needed = (percent * size + 99) / 100;
  return needed == 0 ? 1 : needed;
}

}  // namespace crowdweb::testing
