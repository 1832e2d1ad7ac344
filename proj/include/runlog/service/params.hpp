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

#include "runlog/domain/query.hpp"
#include "runlog/service/api_types.hpp"
#include "runlog/store/store.hpp"

// Query-string encodings of the catalogue queries. Timestamps are RFC 3339,
// multi-valued filters are comma separated (repeating the parameter also
// works). A half-open range such as `from` without `to` extends to the end of
// representable time.
//
//   runs: run_min run_max from to type quality fill tags state
//   logs: text tags author association(KIND:ID) from to
//   paging: offset limit
namespace runlog::service {

RunQuery run_query_from_params(const api::Params& params);
LogQuery log_query_from_params(const api::Params& params);
store::PageRequest page_from_params(const api::Params& params);

api::Params to_params(const RunQuery& q);
api::Params to_params(const LogQuery& q);
void add_page_params(api::Params& params, const store::PageRequest& page);

// Shared helpers for the endpoint layer. All throw Error(kInvalid).
std::int64_t parse_int(std::string_view text, const char* field);
std::vector<std::string> split_list(const api::Params& params, const std::string& name);

}  // namespace runlog::service
