// Copyright 2026 The seekev Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEEKEV_FORMAT_HPP
#define SEEKEV_FORMAT_HPP

#include <charconv>
#include <string>

namespace seekev {

// Shortest decimal that round-trips to the same double. Locale independent,
// so exported files are byte-stable.
inline std::string format_double(double x) {
  if (x == 0.0) return "0";  // folds -0 into 0
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace seekev

#endif  // SEEKEV_FORMAT_HPP
