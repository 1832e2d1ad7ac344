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

#include "runlog/service/params.hpp"

#include <charconv>
#include <limits>

#include "runlog/domain/errors.hpp"

namespace runlog::service {

namespace {

std::optional<std::string> first(const api::Params& params, const std::string& name) {
  const auto it = params.find(name);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

Timestamp parse_time_param(const std::string& text, const char* field) {
  try {
    return parse_timestamp(text);
  } catch (const Error&) {
    fail(ErrorCode::kInvalid, std::string("parameter '") + field + "' must be an RFC 3339 timestamp",
         {{"field", field}, {"value", text}});
  }
}

std::optional<Range<Timestamp>> time_range(const api::Params& params) {
  const auto from = first(params, "from");
  const auto to = first(params, "to");
  if (!from && !to) return std::nullopt;
  return Range<Timestamp>{from ? parse_time_param(*from, "from") : min_timestamp(),
                          to ? parse_time_param(*to, "to") : max_timestamp()};
}

template <typename E>
std::optional<std::set<E>> enum_set(const api::Params& params, const std::string& name) {
  const auto values = split_list(params, name);
  if (values.empty()) return std::nullopt;
  std::set<E> out;
  for (const auto& v : values) out.insert(parse_enum<E>(v));
  return out;
}

std::optional<TagSet> tag_set(const api::Params& params) {
  const auto values = split_list(params, "tags");
  if (values.empty()) return std::nullopt;
  TagSet out;
  for (const auto& v : values) out.insert(Tag::make(v));
  return out;
}

template <typename E>
std::string join_enums(const std::set<E>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out.push_back(',');
    out += to_string(v);
  }
  return out;
}

std::string join_tags(const TagSet& tags) {
  std::string out;
  for (const auto& t : tags) {
    if (!out.empty()) out.push_back(',');
    out += t.value();
  }
  return out;
}

}  // namespace

std::int64_t parse_int(std::string_view text, const char* field) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorCode::kInvalid, std::string("'") + field + "' must be an integer",
         {{"field", field}, {"value", std::string(text)}});
  return value;
}

std::vector<std::string> split_list(const api::Params& params, const std::string& name) {
  std::vector<std::string> out;
  const auto [begin, end] = params.equal_range(name);
  for (auto it = begin; it != end; ++it) {
    std::string_view rest = it->second;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = rest.substr(0, comma);
      if (!item.empty()) out.emplace_back(item);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  return out;
}

RunQuery run_query_from_params(const api::Params& params) {
  RunQuery q;
  const auto run_min = first(params, "run_min");
  const auto run_max = first(params, "run_max");
  if (run_min || run_max) {
    q.run_number_range = Range<std::int64_t>{
        run_min ? parse_int(*run_min, "run_min") : std::numeric_limits<std::int64_t>::min(),
        run_max ? parse_int(*run_max, "run_max") : std::numeric_limits<std::int64_t>::max()};
  }
  q.time_range = time_range(params);
  q.run_types = enum_set<RunType>(params, "type");
  q.qualities = enum_set<Quality>(params, "quality");
  q.states = enum_set<RunState>(params, "state");
  if (const auto fill = first(params, "fill")) q.fill_number = parse_int(*fill, "fill");
  q.tags_all = tag_set(params);
  validate(q);
  return q;
}

LogQuery log_query_from_params(const api::Params& params) {
  LogQuery q;
  if (const auto text = first(params, "text")) {
    auto tokens = split_tokens(*text);
    if (!tokens.empty()) q.text = std::move(tokens);
  }
  q.tags_all = tag_set(params);
  if (const auto author = first(params, "author")) q.author = *author;
  if (const auto assoc = first(params, "association")) q.association = parse_entity_ref(*assoc);
  q.time_range = time_range(params);
  validate(q);
  return q;
}

store::PageRequest page_from_params(const api::Params& params) {
  store::PageRequest page;
  if (const auto offset = first(params, "offset")) page.offset = parse_int(*offset, "offset");
  if (const auto limit = first(params, "limit")) page.limit = parse_int(*limit, "limit");
  store::validate(page);
  return page;
}

api::Params to_params(const RunQuery& q) {
  api::Params p;
  if (q.run_number_range) {
    p.emplace("run_min", std::to_string(q.run_number_range->min));
    p.emplace("run_max", std::to_string(q.run_number_range->max));
  }
  if (q.time_range) {
    p.emplace("from", format_timestamp(q.time_range->min));
    p.emplace("to", format_timestamp(q.time_range->max));
  }
  if (q.run_types) p.emplace("type", join_enums(*q.run_types));
  if (q.qualities) p.emplace("quality", join_enums(*q.qualities));
  if (q.states) p.emplace("state", join_enums(*q.states));
  if (q.fill_number) p.emplace("fill", std::to_string(*q.fill_number));
  if (q.tags_all) p.emplace("tags", join_tags(*q.tags_all));
  return p;
}

api::Params to_params(const LogQuery& q) {
  api::Params p;
  if (q.text) {
    std::string joined;
    for (const auto& t : *q.text) {
      if (!joined.empty()) joined.push_back(' ');
      joined += t;
    }
    p.emplace("text", joined);
  }
  if (q.tags_all) p.emplace("tags", join_tags(*q.tags_all));
  if (q.author) p.emplace("author", *q.author);
  if (q.association) p.emplace("association", to_string(*q.association));
  if (q.time_range) {
    p.emplace("from", format_timestamp(q.time_range->min));
    p.emplace("to", format_timestamp(q.time_range->max));
  }
  return p;
}

void add_page_params(api::Params& params, const store::PageRequest& page) {
  params.emplace("offset", std::to_string(page.offset));
  params.emplace("limit", std::to_string(page.limit));
}

}  // namespace runlog::service
