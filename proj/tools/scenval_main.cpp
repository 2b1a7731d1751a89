#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scenval/model.hpp"
#include "scenval/parse_error.hpp"
#include "scenval/pipeline.hpp"
#include "scenval/spec_parser.hpp"
#include "scenval/util.hpp"

namespace {

using namespace scenval;

int run_check(const std::vector<std::string>& paths) {
  ScenarioSpec merged;
  for (const auto& path : paths) {
    try {
      ScenarioSpec spec = parse_spec(read_file(path), path);
      for (auto& role : spec.roles) {
        bool known = false;
        for (const auto& existing : merged.roles) known |= existing == role;
        if (!known) merged.roles.push_back(std::move(role));
      }
      for (auto& scenario : spec.scenarios) {
        merged.scenarios.push_back(std::move(scenario));
      }
    } catch (const std::exception& err) {
      std::cerr << "[check] " << err.what() << "\n";
      return exit_value(ExitCode::InputError);
    }
  }

  auto diagnostics = validate_spec(merged);
  for (const auto& diagnostic : diagnostics) {
    std::cerr << "[check] " << to_string(diagnostic.severity) << ": "
              << diagnostic.message << "\n";
  }
  if (has_errors(diagnostics)) return exit_value(ExitCode::SpecConflict);

  std::cout << "ok: " << merged.scenarios.size() << " scenario(s), "
            << merged.roles.size() << " declared role(s)\n";
  return exit_value(ExitCode::Ok);
}

int run_and_report(const PipelineConfig& config) {
  PipelineResult result = run_pipeline(config);
  for (const auto& error : result.stage_errors) std::cerr << error << "\n";
  if (result.report) {
    const auto& counts = result.report->suite.counts;
    std::cout << "suite: " << counts.pass << " passed, " << counts.fail << " failed, "
              << counts.error << " error(s)\n";
    std::cout << "report: " << result.report_json_path << "\n";
    std::cout << "living documentation: " << result.living_md_path << "\n";
  }
  return exit_value(result.exit_code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scenval — scenario-driven requirements validation"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Parse and validate scenario spec files");
  std::vector<std::string> check_specs;
  check->add_option("specs", check_specs, "scenario spec file(s)")->required();

  auto* test = app.add_subcommand("test", "Run the validation pipeline with explicit paths");
  PipelineConfig test_config;
  std::string pin_timestamp;
  test->add_option("--spec", test_config.spec_paths, "scenario spec file(s)")->required();
  test->add_option("--features", test_config.features_dir, "directory of .feature files")
      ->required();
  test->add_option("--bindings", test_config.bindings_path, "step bindings file")
      ->required();
  test->add_option("--backlog", test_config.backlog_path, "backlog JSON file");
  test->add_option("--out", test_config.out_dir, "output directory (default scenval-out)");
  test->add_option("--max-superstep", test_config.engine.max_superstep,
                   "superstep event bound (default 1000)");
  test->add_option("--pin-timestamp", pin_timestamp,
                   "fixed generation timestamp for reproducible reports");

  auto* pipeline = app.add_subcommand("pipeline", "Run the validation pipeline from a JSON config");
  std::string config_path;
  std::string pipeline_pin;
  pipeline->add_option("--config", config_path, "pipeline config JSON")->required();
  pipeline->add_option("--pin-timestamp", pipeline_pin,
                       "fixed generation timestamp for reproducible reports");

  auto* sync = app.add_subcommand("sync", "Push a rendered report to a webhook endpoint");
  std::string sync_in, sync_endpoint, sync_token_env = "SCENVAL_TOKEN";
  bool sync_dry_run = false;
  sync->add_option("--in", sync_in, "report.json to push")->required();
  sync->add_option("--endpoint", sync_endpoint, "webhook URL (http://host[:port]/path)");
  sync->add_option("--token-env", sync_token_env,
                   "environment variable holding the bearer token");
  sync->add_flag("--dry-run", sync_dry_run, "write sync-payload.json instead of posting");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return run_check(check_specs);

  if (test->parsed()) {
    if (!pin_timestamp.empty()) test_config.pin_timestamp = pin_timestamp;
    return run_and_report(test_config);
  }

  if (pipeline->parsed()) {
    PipelineConfig config;
    try {
      config = load_pipeline_config(config_path);
    } catch (const std::exception& err) {
      std::cerr << "[config] " << err.what() << "\n";
      return exit_value(ExitCode::InputError);
    }
    if (!pipeline_pin.empty()) config.pin_timestamp = pipeline_pin;
    return run_and_report(config);
  }

  if (sync->parsed()) {
    if (sync_endpoint.empty() && !sync_dry_run) {
      std::cerr << "[sync] either --endpoint or --dry-run is required\n";
      return exit_value(ExitCode::InputError);
    }
    SyncResult result = sync_report(sync_in, sync_endpoint, sync_token_env, sync_dry_run);
    if (result.ok) {
      std::cout << result.message << "\n";
      return 0;
    }
    std::cerr << "[sync] " << result.message << "\n";
    return result.message.rfind("cannot read file", 0) == 0
               ? exit_value(ExitCode::InputError)
               : 1;
  }

  return 0;
}
