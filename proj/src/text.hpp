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
#include <string_view>

// Percent-escaping for free text embedded in the line formats.
namespace crowdweb::detail {

/// Escapes '%', control bytes, every character in `reserved` and, unless
/// `keep_spaces`, the space character.
std::string escape(std::string_view text, std::string_view reserved, bool keep_spaces = false);

/// Inverse of escape. Returns false on a malformed sequence.
bool unescape(std::string_view text, std::string& out);

std::string_view trim(std::string_view text);

}  // namespace crowdweb::detail
