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

#include "runlog/domain/template.hpp"

#include <cctype>
#include <functional>

#include "runlog/domain/errors.hpp"

namespace runlog {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Calls on_text for literal runs and on_slot for each `{{name}}`.
void scan(std::string_view pattern, const std::function<void(std::string_view)>& on_text,
          const std::function<void(std::string_view)>& on_slot) {
  std::size_t pos = 0;
  while (pos < pattern.size()) {
    const auto open = pattern.find("{{", pos);
    if (open == std::string_view::npos) break;
    const auto close = pattern.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    on_text(pattern.substr(pos, open - pos));
    on_slot(trim(pattern.substr(open + 2, close - open - 2)));
    pos = close + 2;
  }
  on_text(pattern.substr(pos));
}

std::string substitute(std::string_view pattern, const TemplateValues& values) {
  std::string out;
  scan(
      pattern, [&](std::string_view text) { out.append(text); },
      [&](std::string_view name) {
        const auto it = values.find(std::string(name));
        if (it != values.end()) out.append(it->second);
      });
  return out;
}

}  // namespace

std::set<std::string> placeholders(std::string_view pattern) {
  std::set<std::string> names;
  scan(
      pattern, [](std::string_view) {}, [&](std::string_view name) { names.emplace(name); });
  return names;
}

void validate(const Template& tpl) {
  if (trim(tpl.name).empty())
    fail(ErrorCode::kInvalid, "template_name must not be empty", {{"field", "template_name"}});
  auto slots = placeholders(tpl.title_pattern);
  slots.merge(placeholders(tpl.body_pattern));
  for (const auto& field : tpl.required_fields) {
    if (!slots.contains(field))
      fail(ErrorCode::kInvalid,
           "required field '" + field + "' does not appear in the title or body pattern",
           {{"field", field}});
  }
}

RenderedLog render_template(const Template& tpl, const TemplateValues& values) {
  for (const auto& field : tpl.required_fields) {
    const auto it = values.find(field);
    if (it == values.end() || trim(it->second).empty())
      fail(ErrorCode::kMissingField, "missing required field '" + field + "'", {{"field", field}});
  }
  return RenderedLog{substitute(tpl.title_pattern, values), substitute(tpl.body_pattern, values),
                     tpl.default_tags};
}

}  // namespace runlog
