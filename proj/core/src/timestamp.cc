// Copyright 2026 The dhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "dhg/timestamp.h"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "dhg/error.h"

namespace dhg {
namespace {

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::kBadTimestamp, "cannot parse '" + std::string(text) + "'");
}

int read_fixed(std::string_view text, std::size_t& pos, std::size_t width, std::string_view whole) {
  if (pos + width > text.size()) bad(whole);
  int value = 0;
  for (std::size_t i = 0; i < width; ++i) {
    char c = text[pos + i];
    if (!std::isdigit(static_cast<unsigned char>(c))) bad(whole);
    value = value * 10 + (c - '0');
  }
  pos += width;
  return value;
}

void expect(std::string_view text, std::size_t& pos, char c, std::string_view whole) {
  if (pos >= text.size() || text[pos] != c) bad(whole);
  ++pos;
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad(whole);

  // Epoch seconds: optional sign followed by digits only.
  {
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    bool all_digits = i < text.size();
    for (std::size_t j = i; j < text.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
        all_digits = false;
        break;
      }
    }
    if (all_digits) {
      Timestamp value = 0;
      const char* begin = text.data() + (text[0] == '+' ? 1 : 0);
      auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), value);
      if (ec != std::errc{} || ptr != text.data() + text.size()) bad(whole);
      return value;
    }
  }

  std::size_t pos = 0;
  const int year = read_fixed(text, pos, 4, whole);
  expect(text, pos, '-', whole);
  const int month = read_fixed(text, pos, 2, whole);
  expect(text, pos, '-', whole);
  const int day = read_fixed(text, pos, 2, whole);
  const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) bad(whole);

  int hh = 0, mm = 0, ss = 0;
  if (pos < text.size()) {
    if (text[pos] != 'T' && text[pos] != 't' && text[pos] != ' ') bad(whole);
    ++pos;
    hh = read_fixed(text, pos, 2, whole);
    expect(text, pos, ':', whole);
    mm = read_fixed(text, pos, 2, whole);
    if (pos < text.size() && text[pos] == ':') {
      ++pos;
      ss = read_fixed(text, pos, 2, whole);
      if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) bad(whole);
      }
    }
    if (hh > 23 || mm > 59 || ss > 60) bad(whole);
    if (pos < text.size()) {
      std::string_view zone = text.substr(pos);
      if (zone != "Z" && zone != "z" && zone != "+00:00" && zone != "+0000" && zone != "-00:00") bad(whole);
      pos = text.size();
    }
  }

  const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
  return static_cast<Timestamp>(days) * kSecondsPerDay + hh * 3600 + mm * 60 + ss;
}

std::string format_iso8601(Timestamp t) {
  Timestamp days = t / kSecondsPerDay;
  Timestamp rem = t % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
                static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60));
  return buf;
}

}  // namespace dhg
