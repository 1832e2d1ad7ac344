/* Copyright 2026 The Runlog Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "runlog/domain/time.hpp"

#include <cctype>
#include <cstdio>

#include "runlog/domain/errors.hpp"

namespace runlog {

namespace {

using namespace std::chrono;

[[noreturn]] void bad_timestamp(std::string_view text) {
  fail(ErrorCode::kInvalid, "malformed RFC 3339 timestamp: '" + std::string(text) + "'",
       {{"value", std::string(text)}});
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  int digits(std::size_t count) {
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        bad_timestamp(text_);
      value = value * 10 + (text_[pos_++] - '0');
    }
    return value;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || std::tolower(static_cast<unsigned char>(text_[pos_])) !=
                                    std::tolower(static_cast<unsigned char>(c)))
      bad_timestamp(text_);
    ++pos_;
  }

  bool peek_is(char c) const {
    return pos_ < text_.size() && std::tolower(static_cast<unsigned char>(text_[pos_])) ==
                                      std::tolower(static_cast<unsigned char>(c));
  }

  bool peek_digit() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  char take() {
    if (pos_ >= text_.size()) bad_timestamp(text_);
    return text_[pos_++];
  }

  bool done() const { return pos_ == text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_timestamp(Timestamp ts) {
  const auto day = floor<days>(ts);
  const year_month_day ymd{day};
  const hh_mm_ss tod{ts - day};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()),
                static_cast<int>(tod.subseconds().count()));
  return buf;
}

Timestamp parse_timestamp(std::string_view text) {
  Cursor in(text);
  const int y = in.digits(4);
  in.expect('-');
  const int mo = in.digits(2);
  in.expect('-');
  const int d = in.digits(2);
  in.expect('T');
  const int h = in.digits(2);
  in.expect(':');
  const int mi = in.digits(2);
  in.expect(':');
  const int s = in.digits(2);

  int ms = 0;
  if (in.peek_is('.')) {
    in.take();
    if (!in.peek_digit()) bad_timestamp(text);
    int scale = 100;
    while (in.peek_digit()) {
      const int digit = in.take() - '0';
      ms += digit * scale;
      scale /= 10;
    }
  }

  int offset_minutes = 0;
  if (in.peek_is('Z')) {
    in.take();
  } else {
    const char sign = in.take();
    if (sign != '+' && sign != '-') bad_timestamp(text);
    const int oh = in.digits(2);
    in.expect(':');
    const int om = in.digits(2);
    if (oh > 23 || om > 59) bad_timestamp(text);
    offset_minutes = (sign == '+' ? 1 : -1) * (oh * 60 + om);
  }
  if (!in.done()) bad_timestamp(text);

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  // Leap seconds (s == 60) are not representable in sys_time.
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) bad_timestamp(text);

  const auto local = sys_days{ymd} + hours{h} + minutes{mi} + seconds{s} + milliseconds{ms};
  return time_point_cast<milliseconds>(local - minutes{offset_minutes});
}

Timestamp from_unix_millis(std::int64_t ms) { return Timestamp{Millis{ms}}; }

std::int64_t to_unix_millis(Timestamp ts) { return ts.time_since_epoch().count(); }

Timestamp now_utc() { return time_point_cast<milliseconds>(system_clock::now()); }

Timestamp min_timestamp() { return from_unix_millis(0); }

Timestamp max_timestamp() {
  return time_point_cast<milliseconds>(sys_days{year{9999} / December / 31}) + hours{23} +
         minutes{59} + seconds{59} + milliseconds{999};
}

}  // namespace runlog
