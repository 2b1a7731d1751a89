#include "scenval/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>

#include <httplib.h>
#include <json.hpp>

#include "scenval/backlog.hpp"
#include "scenval/bindings.hpp"
#include "scenval/feature.hpp"
#include "scenval/parse_error.hpp"
#include "scenval/runner.hpp"
#include "scenval/spec_parser.hpp"
#include "scenval/util.hpp"

namespace scenval {

namespace fs = std::filesystem;

int exit_value(ExitCode code) { return static_cast<int>(code); }

ExitCode worst(ExitCode a, ExitCode b) {
  return exit_value(a) >= exit_value(b) ? a : b;
}

PipelineConfig load_pipeline_config(const std::string& path) {
  const std::string text = read_file(path);
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                     std::string("malformed JSON config: ") + err.what(), "");
  }
  if (!root.is_object()) {
    throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                     "pipeline config must be a JSON object", "");
  }

  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) -> std::string {
    if (p.empty()) return p;
    fs::path candidate(p);
    return candidate.is_absolute() ? candidate.generic_string()
                                   : (base / candidate).generic_string();
  };

  PipelineConfig config;
  if (root.contains("specs")) {
    if (!root["specs"].is_array()) {
      throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                       "'specs' must be an array of paths", "specs");
    }
    for (const auto& entry : root["specs"]) {
      if (!entry.is_string()) {
        throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                         "'specs' entries must be strings", "specs");
      }
      config.spec_paths.push_back(resolve(entry.get<std::string>()));
    }
  }
  if (root.contains("spec") && root["spec"].is_string()) {
    config.spec_paths.push_back(resolve(root["spec"].get<std::string>()));
  }

  auto string_field = [&](const char* key) -> std::string {
    if (!root.contains(key)) return {};
    if (!root[key].is_string()) {
      throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                       std::string("'") + key + "' must be a string", key);
    }
    return root[key].get<std::string>();
  };

  config.features_dir = resolve(string_field("features"));
  config.bindings_path = resolve(string_field("bindings"));
  config.backlog_path = resolve(string_field("backlog"));
  std::string out = string_field("out");
  if (!out.empty()) config.out_dir = resolve(out);

  if (root.contains("max_superstep")) {
    if (!root["max_superstep"].is_number_integer()) {
      throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                       "'max_superstep' must be an integer", "max_superstep");
    }
    config.engine.max_superstep = root["max_superstep"].get<int>();
  }
  std::string pin = string_field("pin_timestamp");
  if (!pin.empty()) config.pin_timestamp = pin;

  if (root.contains("sync")) {
    const auto& sync = root["sync"];
    if (!sync.is_object()) {
      throw ParseError(ParseErrorCode::Syntax, path, 1, 1, "'sync' must be an object",
                       "sync");
    }
    if (sync.contains("endpoint") && sync["endpoint"].is_string()) {
      config.sync.endpoint = sync["endpoint"].get<std::string>();
    }
    if (sync.contains("token_env") && sync["token_env"].is_string()) {
      config.sync.token_env = sync["token_env"].get<std::string>();
    }
    if (sync.contains("dry_run") && sync["dry_run"].is_boolean()) {
      config.sync.dry_run = sync["dry_run"].get<bool>();
    }
  }

  return config;
}

namespace {

std::vector<std::string> list_feature_files(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".feature") {
      paths.push_back(entry.path().generic_string());
    }
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

std::vector<Diagnostic> merge_diagnostics(std::vector<Diagnostic> first,
                                          const std::vector<Diagnostic>& second) {
  for (const auto& diagnostic : second) {
    if (std::find(first.begin(), first.end(), diagnostic) == first.end()) {
      first.push_back(diagnostic);
    }
  }
  return first;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  PipelineResult result;

  auto input_error = [&](const std::string& stage, const std::string& message) {
    result.stage_errors.push_back(stage + ": " + message);
    result.exit_code = ExitCode::InputError;
    return result;
  };

  // Config invariant: every input path must be resolvable up front.
  if (config.spec_paths.empty()) return input_error("config", "no scenario spec files");
  if (config.features_dir.empty()) return input_error("config", "no features directory");
  if (config.bindings_path.empty()) return input_error("config", "no bindings file");
  if (!fs::is_directory(config.features_dir)) {
    return input_error("config", "features directory not found: " + config.features_dir);
  }
  for (const auto& path : config.spec_paths) {
    if (!fs::is_regular_file(path)) {
      return input_error("config", "spec file not found: " + path);
    }
  }
  if (!fs::is_regular_file(config.bindings_path)) {
    return input_error("config", "bindings file not found: " + config.bindings_path);
  }
  if (!config.backlog_path.empty() && !fs::is_regular_file(config.backlog_path)) {
    return input_error("config", "backlog file not found: " + config.backlog_path);
  }

  // Stage 1: load the feature specification.
  std::vector<Feature> features;
  std::vector<std::string> feature_paths;
  try {
    feature_paths = list_feature_files(config.features_dir);
    for (const auto& path : feature_paths) {
      features.push_back(parse_feature(read_file(path), path));
    }
  } catch (const std::exception& err) {
    return input_error("load-features", err.what());
  }

  // Stage 2: load the step bindings the test generator works from.
  BindingSet bindings;
  try {
    bindings = parse_bindings(read_file(config.bindings_path), config.bindings_path);
  } catch (const std::exception& err) {
    return input_error("load-bindings", err.what());
  }

  ParsedBacklog backlog;
  if (!config.backlog_path.empty()) {
    try {
      backlog = parse_backlog(read_file(config.backlog_path), config.backlog_path);
    } catch (const std::exception& err) {
      return input_error("load-backlog", err.what());
    }
  }

  // Stage 3: load the scenario specification.
  ScenarioSpec spec;
  try {
    for (const auto& path : config.spec_paths) {
      ScenarioSpec part = parse_spec(read_file(path), path);
      for (auto& role : part.roles) {
        if (std::find(spec.roles.begin(), spec.roles.end(), role) == spec.roles.end()) {
          spec.roles.push_back(std::move(role));
        }
      }
      for (auto& scenario : part.scenarios) spec.scenarios.push_back(std::move(scenario));
    }
  } catch (const std::exception& err) {
    return input_error("load-spec", err.what());
  }

  // Stage 4: compile/validate the specification.
  std::vector<Diagnostic> spec_diagnostics = validate_spec(spec);
  const bool spec_invalid = has_errors(spec_diagnostics);
  if (spec_invalid) {
    result.exit_code = worst(result.exit_code, ExitCode::SpecConflict);
    result.stage_errors.push_back("validate-spec: specification has validation errors");
  }
  if (config.engine.max_superstep < 1) {
    return input_error("config", "max_superstep must be at least 1");
  }

  // Stage 5: execute the generated test steps.
  SuiteResult suite;
  if (spec_invalid) {
    // The suite cannot run; every usage scenario reports the broken spec.
    for (const auto& feature : features) {
      FeatureResult feature_result;
      feature_result.feature_path = feature.source_path;
      feature_result.feature_name = feature.name;
      feature_result.story_ref = feature.story_ref;
      for (const auto& scenario : feature.usage_scenarios) {
        ScenarioResult scenario_result;
        scenario_result.scenario_name = scenario.name;
        scenario_result.result.verdict = Verdict::Error;
        scenario_result.result.error_cause = "scenario specification failed validation";
        ++suite.counts.error;
        feature_result.scenarios.push_back(std::move(scenario_result));
      }
      suite.features.push_back(std::move(feature_result));
    }
    std::sort(suite.features.begin(), suite.features.end(),
              [](const FeatureResult& a, const FeatureResult& b) {
                return a.feature_path < b.feature_path;
              });
  } else {
    suite = run_suite(features, spec, bindings, config.engine);
  }

  // Exit severity from verdicts and violations.
  for (const auto& feature : suite.features) {
    for (const auto& scenario : feature.scenarios) {
      if (scenario.result.verdict != Verdict::Pass) {
        result.exit_code = worst(result.exit_code, ExitCode::TestsFailed);
      }
      for (const auto& violation : scenario.result.violations) {
        if (violation.kind == ViolationKind::Contradiction ||
            violation.kind == ViolationKind::Livelock) {
          result.exit_code = worst(result.exit_code, ExitCode::SpecConflict);
        }
      }
    }
  }

  // Stage 6: assemble the living documentation.
  LivingDocReport report;
  report.graph = link(backlog.backlog, features);
  report.graph.diagnostics = merge_diagnostics(backlog.diagnostics, report.graph.diagnostics);
  report.statuses = rollup(report.graph, suite);
  report.suite = std::move(suite);
  report.spec_diagnostics = std::move(spec_diagnostics);
  report.meta.generated = config.pin_timestamp ? *config.pin_timestamp : utc_timestamp();
  try {
    for (const auto& path : config.spec_paths) {
      report.meta.inputs.push_back({path, fnv1a64_hex(read_file(path))});
    }
    for (const auto& path : feature_paths) {
      report.meta.inputs.push_back({path, fnv1a64_hex(read_file(path))});
    }
    report.meta.inputs.push_back(
        {config.bindings_path, fnv1a64_hex(read_file(config.bindings_path))});
    if (!config.backlog_path.empty()) {
      report.meta.inputs.push_back(
          {config.backlog_path, fnv1a64_hex(read_file(config.backlog_path))});
    }
  } catch (const std::exception& err) {
    return input_error("digest-inputs", err.what());
  }

  try {
    fs::create_directories(config.out_dir);
    result.report_json_path = (fs::path(config.out_dir) / "report.json").generic_string();
    result.living_md_path = (fs::path(config.out_dir) / "living.md").generic_string();
    write_file(result.report_json_path, render_json(report));
    write_file(result.living_md_path, render_markdown(report));
    write_file((fs::path(config.out_dir) / "results.xml").generic_string(),
               to_junit_xml(report.suite));
  } catch (const std::exception& err) {
    result.report = std::move(report);
    return input_error("write-report", err.what());
  }

  result.report = std::move(report);

  // Best-effort push; never changes the validation verdict.
  if (!config.sync.endpoint.empty() || config.sync.dry_run) {
    SyncResult sync = sync_report(result.report_json_path, config.sync.endpoint,
                                  config.sync.token_env, config.sync.dry_run);
    if (!sync.ok) result.stage_errors.push_back("sync: " + sync.message);
  }

  return result;
}

SyncResult sync_report(const std::string& report_path, const std::string& endpoint,
                       const std::string& token_env, bool dry_run) {
  SyncResult result;

  std::string payload;
  try {
    payload = read_file(report_path);
  } catch (const std::exception& err) {
    result.message = err.what();
    return result;
  }

  if (dry_run) {
    try {
      fs::path target = fs::path(report_path).parent_path() / "sync-payload.json";
      write_file(target.generic_string(), payload);
      result.ok = true;
      result.message = "dry run, payload written to " + target.generic_string();
    } catch (const std::exception& err) {
      result.message = err.what();
    }
    return result;
  }

  // Split scheme://host[:port] from the request path.
  std::size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos) {
    result.message = "invalid endpoint (expected http://host[:port]/path): " + endpoint;
    return result;
  }
  std::size_t path_start = endpoint.find('/', scheme + 3);
  std::string base = path_start == std::string::npos ? endpoint
                                                     : endpoint.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : endpoint.substr(path_start);

  httplib::Client client(base);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(10, 0);

  httplib::Headers headers;
  if (const char* token = std::getenv(token_env.c_str()); token && *token) {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  auto response = client.Post(path, headers, payload, "application/json");
  if (!response) {
    result.message = "network error: " + httplib::to_string(response.error());
    return result;
  }
  result.http_status = response->status;
  if (response->status >= 200 && response->status < 300) {
    result.ok = true;
    result.message = "pushed report (" + std::to_string(response->status) + ")";
  } else {
    result.message = "endpoint returned status " + std::to_string(response->status);
  }
  return result;
}

}  // namespace scenval
