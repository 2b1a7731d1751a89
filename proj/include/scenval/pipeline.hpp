#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scenval/engine.hpp"
#include "scenval/report.hpp"

namespace scenval {

/// Exit codes of the validation pipeline; the highest-severity condition
/// observed wins (3 > 2 > 1 > 0).
enum class ExitCode {
  Ok = 0,             // every usage scenario passed
  TestsFailed = 1,    // failed or erroring tests
  SpecConflict = 2,   // contradiction/livelock or spec validation errors
  InputError = 3,     // parse/config/IO failure
};

int exit_value(ExitCode code);
ExitCode worst(ExitCode a, ExitCode b);

struct SyncConfig {
  std::string endpoint;           // empty = no sync
  std::string token_env = "SCENVAL_TOKEN";
  bool dry_run = false;
};

struct PipelineConfig {
  std::vector<std::string> spec_paths;
  std::string features_dir;
  std::string bindings_path;
  std::string backlog_path;  // optional; empty = no backlog
  std::string out_dir = "scenval-out";
  EngineConfig engine;
  SyncConfig sync;
  std::optional<std::string> pin_timestamp;  // golden-file determinism
};

/// Loads a JSON pipeline configuration. Relative paths are resolved
/// against the config file's directory.
PipelineConfig load_pipeline_config(const std::string& path);

struct PipelineResult {
  ExitCode exit_code = ExitCode::Ok;
  std::optional<LivingDocReport> report;   // absent after input errors
  std::vector<std::string> stage_errors;   // one "stage: message" per failure
  std::string report_json_path;
  std::string living_md_path;
};

/// Runs the full validation pipeline: load inputs, compile tests, validate
/// the spec, run the suite, link the trace graph, roll up coverage, render
/// report.json / living.md / results.xml, and optionally push the report.
/// Report files are written for exit codes 0-2; an input error (3) writes
/// nothing.
PipelineResult run_pipeline(const PipelineConfig& config);

struct SyncResult {
  bool ok = false;
  int http_status = 0;
  std::string message;
};

/// POSTs the report file to the endpoint with a bearer token read from the
/// named environment variable. With dry_run, writes sync-payload.json next
/// to the report instead of any network call. Never mutates the report.
SyncResult sync_report(const std::string& report_path, const std::string& endpoint,
                       const std::string& token_env, bool dry_run);

}  // namespace scenval
