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

#include "runlog/sim/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "runlog/domain/errors.hpp"

namespace runlog::sim {

namespace {

using std::chrono::milliseconds;

constexpr std::array kBeamTypes{"p-p", "p-p", "p-p", "Pb-Pb", "p-Pb"};
constexpr std::array kDetectors{"tpc", "its", "tof", "emcal", "muon", "trd", "zdc"};
constexpr std::array kRunTags{"physics", "calib", "test", "lowmu", "highmu", "trigger", "reference"};
constexpr std::array kTitles{"Beam dump",           "Trigger rates nominal", "HV trip",
                             "Busy from readout",   "Calibration finished",  "Data quality check",
                             "Configuration change", "Magnet ramp",          "Shift handover"};
constexpr std::array kWords{"eos",   "tpc",    "its",   "trigger", "rate",  "nominal", "busy", "readout",
                            "hv",    "trip",   "sector", "beam",   "dump",  "stable",  "noise", "pedestal",
                            "check", "restart", "crate", "link",   "error", "ok"};

template <typename T, std::size_t N>
const T& pick(Random& rng, const std::array<T, N>& values) {
  return values[static_cast<std::size_t>(rng.uniform_int(0, N - 1))];
}

void check_probability(double p, const char* field) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::kInvalid, std::string(field) + " must lie in [0, 1]", {{"field", field}});
}

std::vector<store::NewTemplate> builtin_templates() {
  return {
      {"eos", "End of shift {{shift}}", "Shifter: {{shifter}}\n\n{{summary}}", {"shift", "shifter"},
       {Tag::make("shift")}},
      {"run-problem", "Problem in {{detector}}", "Detector {{detector}} reported: {{problem}}",
       {"detector", "problem"}, {Tag::make("problem")}},
  };
}

std::string sentence(Random& rng, std::int64_t words) {
  std::string out;
  for (std::int64_t i = 0; i < words; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += pick(rng, kWords);
  }
  return out;
}

RunType fill_run_type(Random& rng) {
  const double u = rng.uniform();
  if (u < 0.85) return RunType::kGlobal;
  if (u < 0.95) return RunType::kDetectorCalibration;
  return RunType::kTechnical;
}

RunType gap_run_type(Random& rng) {
  const double u = rng.uniform();
  if (u < 0.5) return RunType::kCosmics;
  if (u < 0.8) return RunType::kDetectorCalibration;
  return RunType::kTechnical;
}

Quality draw_quality(Random& rng) {
  const double u = rng.uniform();
  if (u < 0.8) return Quality::kGood;
  if (u < 0.9) return Quality::kBad;
  return Quality::kUnknown;
}

PassStatus draw_status(Random& rng) {
  const double u = rng.uniform();
  if (u < 0.85) return PassStatus::kDone;
  if (u < 0.95) return PassStatus::kFailed;
  return PassStatus::kRunning;
}

class Builder {
 public:
  explicit Builder(const SimConfig& config) : cfg_(config), rng_(config.seed), clock_(config.start) {}

  SimDataset build() {
    SimDataset ds;
    ds.config = cfg_;
    if (cfg_.n_fills == 0) return ds;
    ds.templates = builtin_templates();
    const double p = cfg_.p_run_without_fill;
    for (std::int64_t f = 0; f < cfg_.n_fills; ++f) {
      const auto fill_number = cfg_.first_fill_number + f;
      const auto in_fill = std::clamp<std::int64_t>(rng_.poisson(cfg_.mean_runs_per_fill), 1, kMaxRunsPerFill);
      const auto fill_start = clock_;
      store::NewFill fill;
      fill.fill_number = fill_number;
      fill.beam_type = pick(rng_, kBeamTypes);
      fill.created_at = fill_start;
      fill.stable_beams_start = fill_start;
      for (std::int64_t i = 0; i < in_fill; ++i)
        add_run(ds, p >= 1.0 ? std::nullopt : std::optional<std::int64_t>(fill_number));
      fill.stable_beams_end = clock_;
      ds.fills.push_back(fill);
      advance(1800, 14400);

      const double lambda = p >= 1.0 ? 0.0 : static_cast<double>(in_fill) * p / (1.0 - p);
      const auto between = rng_.poisson(lambda);
      for (std::int64_t i = 0; i < between; ++i) add_run(ds, std::nullopt);
    }
    return ds;
  }

 private:
  void advance(std::int64_t lo_s, std::int64_t hi_s) { clock_ += milliseconds(rng_.uniform_int(lo_s, hi_s) * 1000); }

  void add_run(SimDataset& ds, std::optional<std::int64_t> fill_number) {
    SimRun sim;
    auto& run = sim.run;
    run.run_type = fill_number ? fill_run_type(rng_) : gap_run_type(rng_);
    run.fill_number = fill_number;
    run.start_time = clock_;
    run.configuration = {{"detectors", pick(rng_, kDetectors)},
                         {"trigger", "trg-" + std::to_string(rng_.uniform_int(1, 20))}};
    if (run.run_type == RunType::kCosmics) run.tags.insert(Tag::make("cosmics"));
    const auto n_tags = rng_.uniform_int(0, 2);
    for (std::int64_t i = 0; i < n_tags; ++i) run.tags.insert(Tag::make(pick(rng_, kRunTags)));
    const auto duration_ms =
        static_cast<std::int64_t>(std::llround(rng_.log_uniform(cfg_.min_duration_s, cfg_.max_duration_s) * 1000.0));
    sim.end_time = clock_ + milliseconds(duration_ms);
    sim.quality = draw_quality(rng_);
    ds.runs.push_back(sim);
    const auto run_index = static_cast<std::int64_t>(ds.runs.size());

    std::optional<std::int64_t> last_pass;
    if (rng_.bernoulli(cfg_.p_pass_per_run)) {
      const auto chain = rng_.uniform_int(1, cfg_.max_pass_chain);
      auto created = sim.end_time;
      for (std::int64_t k = 0; k < chain; ++k) {
        created += milliseconds(rng_.uniform_int(600, 86400) * 1000);
        SimPass pass;
        pass.pass.name = (k == 0 ? "cpass0" : "apass" + std::to_string(k)) + "-run" + std::to_string(run_index);
        pass.pass.input = last_pass ? EntityRef{EntityKind::kPass, *last_pass} : EntityRef{EntityKind::kRun, run_index};
        pass.pass.configuration = {{"software", "O2-v" + std::to_string(rng_.uniform_int(1, 30))}};
        pass.pass.created_at = created;
        pass.final_status = draw_status(rng_);
        ds.passes.push_back(pass);
        last_pass = static_cast<std::int64_t>(ds.passes.size());
      }
    }

    const auto n_logs = rng_.poisson(cfg_.logs_per_run);
    for (std::int64_t i = 0; i < n_logs; ++i) {
      SimLog log;
      log.log.origin = Origin::kProcess;
      log.log.created_at =
          *run.start_time + milliseconds(static_cast<std::int64_t>(rng_.uniform() * static_cast<double>(duration_ms)));
      log.log.associations.push_back({EntityKind::kRun, run_index});
      if (fill_number && rng_.bernoulli(0.5)) log.log.associations.push_back({EntityKind::kFill, *fill_number});
      if (last_pass && rng_.bernoulli(0.3)) log.log.associations.push_back({EntityKind::kPass, *last_pass});
      if (rng_.bernoulli(0.3)) {
        if (rng_.bernoulli(0.5)) {
          log.template_name = "eos";
          log.values = {{"shift", std::to_string(rng_.uniform_int(1, 3))},
                        {"shifter", "shifter-" + std::to_string(rng_.uniform_int(1, 40))},
                        {"summary", sentence(rng_, rng_.uniform_int(3, 12))}};
        } else {
          log.template_name = "run-problem";
          log.values = {{"detector", pick(rng_, kDetectors)}, {"problem", sentence(rng_, rng_.uniform_int(2, 8))}};
        }
      } else {
        log.log.title = pick(rng_, kTitles);
        log.log.body = sentence(rng_, rng_.uniform_int(4, 20));
      }
      if (rng_.bernoulli(0.4)) log.log.tags.insert(Tag::make(pick(rng_, kDetectors)));
      ds.logs.push_back(log);
    }

    clock_ = sim.end_time;
    advance(60, 900);
  }

  const SimConfig& cfg_;
  Random rng_;
  Timestamp clock_;
};

}  // namespace

double Random::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t Random::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

bool Random::bernoulli(double p) { return uniform() < p; }

std::int64_t Random::poisson(double lambda) {
  // Knuth's product method, split into chunks so exp(-lambda) stays normal.
  std::int64_t total = 0;
  while (lambda > 0.0) {
    const double chunk = std::min(lambda, 500.0);
    lambda -= chunk;
    const double limit = std::exp(-chunk);
    double product = uniform();
    while (product > limit) {
      ++total;
      product *= uniform();
    }
  }
  return total;
}

double Random::log_uniform(double lo, double hi) {
  return std::exp(std::log(lo) + uniform() * (std::log(hi) - std::log(lo)));
}

void validate(const SimConfig& c) {
  if (c.n_fills < 0) fail(ErrorCode::kInvalid, "n_fills must be non-negative", {{"field", "n_fills"}});
  if (!(c.mean_runs_per_fill > 0.0))
    fail(ErrorCode::kInvalid, "mean_runs_per_fill must be positive", {{"field", "mean_runs_per_fill"}});
  if (!(c.p_run_without_fill >= 0.0 && c.p_run_without_fill < 1.0))
    fail(ErrorCode::kInvalid, "p_run_without_fill must lie in [0, 1)", {{"field", "p_run_without_fill"}});
  check_probability(c.p_pass_per_run, "p_pass_per_run");
  if (!(c.min_duration_s > 0.0 && c.min_duration_s <= c.max_duration_s))
    fail(ErrorCode::kInvalid, "duration bounds must satisfy 0 < min <= max", {{"field", "min_duration_s"}});
  if (c.max_pass_chain < 1) fail(ErrorCode::kInvalid, "max_pass_chain must be positive", {{"field", "max_pass_chain"}});
  if (!(c.logs_per_run >= 0.0))
    fail(ErrorCode::kInvalid, "logs_per_run must be non-negative", {{"field", "logs_per_run"}});
  if (c.first_fill_number < 1)
    fail(ErrorCode::kInvalid, "first_fill_number must be positive", {{"field", "first_fill_number"}});
}

std::int64_t SimDataset::runs_with_fill() const {
  return std::count_if(runs.begin(), runs.end(), [](const SimRun& r) { return r.run.fill_number.has_value(); });
}

SimDataset generate(const SimConfig& config) {
  validate(config);
  return Builder(config).build();
}

Materialized materialize(const SimDataset& ds, const ActorRef& actor) {
  Materialized m;
  for (const auto& f : ds.fills) {
    LhcFill fill;
    fill.fill_number = f.fill_number;
    fill.beam_type = f.beam_type;
    fill.stable_beams_start = f.stable_beams_start;
    fill.stable_beams_end = f.stable_beams_end;
    fill.created_at = *f.created_at;
    m.fills.push_back(fill);
  }
  for (std::size_t i = 0; i < ds.runs.size(); ++i) {
    const auto& s = ds.runs[i];
    Run run;
    run.run_number = static_cast<std::int64_t>(i + 1);
    run.run_type = s.run.run_type;
    run.state = RunState::kEnded;
    run.start_time = *s.run.start_time;
    run.end_time = s.end_time;
    run.fill_number = s.run.fill_number;
    run.configuration = s.run.configuration;
    run.quality = s.quality;
    run.tags = s.run.tags;
    m.runs.push_back(run);
  }
  for (std::size_t i = 0; i < ds.passes.size(); ++i) {
    const auto& s = ds.passes[i];
    ReconstructionPass pass;
    pass.pass_id = static_cast<std::int64_t>(i + 1);
    pass.name = s.pass.name;
    pass.input = s.pass.input;
    pass.configuration = s.pass.configuration;
    pass.status = s.final_status;
    pass.created_at = *s.pass.created_at;
    m.passes.push_back(pass);
  }
  for (std::size_t i = 0; i < ds.logs.size(); ++i) {
    const auto& s = ds.logs[i];
    LogEntry log;
    log.log_id = static_cast<std::int64_t>(i + 1);
    log.title = s.log.title;
    log.body = s.log.body;
    log.tags = s.log.tags;
    if (s.template_name) {
      const auto it = std::find_if(ds.templates.begin(), ds.templates.end(),
                                   [&](const store::NewTemplate& t) { return t.name == *s.template_name; });
      if (it == ds.templates.end()) fail(ErrorCode::kNotFound, "unknown template " + *s.template_name);
      const Template tpl{0, it->name, it->title_pattern, it->body_pattern, it->required_fields, it->default_tags};
      auto rendered = render_template(tpl, s.values);
      log.title = rendered.title;
      log.body = rendered.body;
      log.tags.merge(rendered.tags);
    }
    log.author = actor;
    log.origin = s.log.origin;
    log.created_at = *s.log.created_at;
    log.associations = s.log.associations;
    log.revisions.push_back({0, log.title, log.body, actor, log.created_at});
    m.logs.push_back(log);
  }
  return m;
}

}  // namespace runlog::sim
