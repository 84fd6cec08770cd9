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

#ifndef SEEKEV_STRATEGY_FILE_HPP
#define SEEKEV_STRATEGY_FILE_HPP

// Strategy file: one evader strategy per line,
//
//   ADD <u>-<v>;<u>-<v>...|DEL <u>-<v>;...|<label>
//
// e.g. "ADD 1-2;1-3|DEL 0-1|ROAM(2)". An empty list is written as a bare
// keyword ("ADD|DEL 0-1|ROAM(0)"). Node ids are dense integer ids. Labels
// may not contain '|' or line breaks. Blank lines and '#' lines are ignored.

#include <charconv>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seekev/error.hpp"
#include "seekev/hiding.hpp"

namespace seekev {

namespace detail {

inline void write_edge_field(std::ostream& out, std::string_view keyword,
                             const std::vector<Edge>& edges) {
  out << keyword;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << (i == 0 ? ' ' : ';') << edges[i].u << '-' << edges[i].v;
  }
}

inline std::vector<Edge> parse_edge_field(std::string_view field,
                                          std::string_view keyword,
                                          std::size_t line) {
  if (field.substr(0, keyword.size()) != keyword) {
    throw ParseError("expected '" + std::string(keyword) + "'", line);
  }
  field.remove_prefix(keyword.size());
  std::vector<Edge> out;
  if (field.empty()) return out;
  if (field.front() != ' ') {
    throw ParseError("expected a space after '" + std::string(keyword) + "'",
                     line);
  }
  field.remove_prefix(1);
  while (true) {
    const std::size_t semi = field.find(';');
    const std::string_view item = field.substr(0, semi);
    const std::size_t dash = item.find('-');
    NodeId a = 0, b = 0;
    auto parse = [&](std::string_view s, NodeId& x) {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
      return ec == std::errc() && p == s.data() + s.size() && !s.empty();
    };
    if (dash == std::string_view::npos || !parse(item.substr(0, dash), a) ||
        !parse(item.substr(dash + 1), b)) {
      throw ParseError("bad edge '" + std::string(item) + "'", line);
    }
    if (a == b) throw ParseError("self-loop in strategy", line);
    out.emplace_back(a, b);
    if (semi == std::string_view::npos) break;
    field.remove_prefix(semi + 1);
  }
  return out;
}

}  // namespace detail

inline void write_strategy(std::ostream& out, const EvaderStrategy& s) {
  if (s.label.find_first_of("|\n\r") != std::string::npos) {
    throw PreconditionError("strategy label '" + s.label +
                            "' contains a reserved character");
  }
  detail::write_edge_field(out, "ADD", s.additions);
  out << '|';
  detail::write_edge_field(out, "DEL", s.removals);
  out << '|' << s.label << '\n';
}

inline void write_strategies(std::ostream& out,
                             std::span<const EvaderStrategy> strategies) {
  for (const EvaderStrategy& s : strategies) write_strategy(out, s);
}

inline std::vector<EvaderStrategy> parse_strategies(std::istream& in) {
  std::vector<EvaderStrategy> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t bar1 = line.find('|');
    const std::size_t bar2 =
        bar1 == std::string::npos ? std::string::npos : line.find('|', bar1 + 1);
    if (bar2 == std::string::npos) {
      throw ParseError("expected three '|'-separated fields", line_no);
    }
    const std::string_view view(line);
    EvaderStrategy s;
    s.additions = detail::parse_edge_field(view.substr(0, bar1), "ADD", line_no);
    s.removals = detail::parse_edge_field(view.substr(bar1 + 1, bar2 - bar1 - 1),
                                          "DEL", line_no);
    s.label = line.substr(bar2 + 1);
    if (s.label.find('|') != std::string::npos) {
      throw ParseError("label contains '|'", line_no);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace seekev

#endif  // SEEKEV_STRATEGY_FILE_HPP
