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

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "runlog/domain/types.hpp"

namespace runlog {

using TemplateValues = std::map<std::string, std::string>;

struct RenderedLog {
  std::string title;
  std::string body;
  TagSet tags;
};

// Names found in `{{name}}` slots. Whitespace inside the braces is ignored;
// an unterminated `{{` is literal text.
std::set<std::string> placeholders(std::string_view pattern);

// Template name non-empty and required_fields drawn from the patterns'
// placeholders; throws Error(kInvalid).
void validate(const Template& tpl);

// Substitutes every slot. Slots without a value render empty unless the name
// is required; a required name that is absent or blank raises
// Error(kMissingField) with detail.field set.
RenderedLog render_template(const Template& tpl, const TemplateValues& values);

}  // namespace runlog
