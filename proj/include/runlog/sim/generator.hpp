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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "runlog/domain/template.hpp"
#include "runlog/domain/types.hpp"
#include "runlog/store/store.hpp"

namespace runlog::sim {

// Generator parameters. Randomness comes from std::mt19937_64 seeded with
// `seed`; every distribution below is computed by hand from its raw output so
// datasets are identical across standard libraries.
//
// Per fill: k ~ Poisson(mean_runs_per_fill) clamped to [1, 200] runs inside
// the fill, then Poisson(k * p / (1 - p)) runs before the next fill with no
// fill reference. Run durations are log-uniform over
// [min_duration_s, max_duration_s]. Each run starts a pass chain with
// probability p_pass_per_run, of length uniform in [1, max_pass_chain], and
// gets Poisson(logs_per_run) log entries.
struct SimConfig {
  std::uint64_t seed = 1;
  std::int64_t n_fills = 10;
  double mean_runs_per_fill = 56.0;
  double p_run_without_fill = 0.05;
  double min_duration_s = 180.0;
  double max_duration_s = 108000.0;
  double p_pass_per_run = 0.3;
  std::int64_t max_pass_chain = 3;
  double logs_per_run = 0.7;
  std::int64_t first_fill_number = 7001;
  Timestamp start = from_unix_millis(1704067200000);  // 2024-01-01T00:00:00Z
};

inline constexpr std::int64_t kMaxRunsPerFill = 200;

// Throws Error(kInvalid) with detail.field.
void validate(const SimConfig& config);

// References inside a dataset: RUN and PASS ids are 1-based positions in
// SimDataset::runs / passes (equal to the ids an empty store assigns on
// replay); FILL ids are fill numbers.
struct SimRun {
  store::NewRun run;
  Timestamp end_time;
  Quality quality = Quality::kUnknown;
};

struct SimPass {
  store::NewPass pass;
  PassStatus final_status = PassStatus::kDone;
};

struct SimLog {
  store::NewLog log;  // title/body empty when template_name is set
  std::optional<std::string> template_name;
  TemplateValues values;
};

struct SimDataset {
  SimConfig config;
  std::vector<store::NewTemplate> templates;
  std::vector<store::NewFill> fills;
  std::vector<SimRun> runs;
  std::vector<SimPass> passes;
  std::vector<SimLog> logs;

  std::int64_t runs_with_fill() const;
};

SimDataset generate(const SimConfig& config);

// Domain entities as an empty store would hold them after a lossless
// replay. Each log carries only its revision 0.
struct Materialized {
  std::vector<LhcFill> fills;
  std::vector<Run> runs;
  std::vector<ReconstructionPass> passes;
  std::vector<LogEntry> logs;
};
Materialized materialize(const SimDataset& dataset, const ActorRef& actor);

// Raw draws used by generate(); exposed for tests.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // [lo, hi]
  bool bernoulli(double p);
  std::int64_t poisson(double lambda);
  double log_uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace runlog::sim
