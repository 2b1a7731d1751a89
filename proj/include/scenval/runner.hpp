#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scenval/bindings.hpp"
#include "scenval/engine.hpp"
#include "scenval/feature.hpp"
#include "scenval/model.hpp"

namespace scenval {

enum class ActionMode { Inject, Expect };

struct TestAction {
  ActionMode mode = ActionMode::Inject;
  Event event;
  std::string step_text;
  StepKeyword keyword = StepKeyword::Given;

  bool operator==(const TestAction&) const = default;
};

/// A usage scenario compiled against a binding set: Given/When steps are
/// injections, Then steps are ordered expectations, And/But inherit the
/// mode of the nearest preceding Given/When/Then.
struct TestCase {
  std::string feature_name;
  std::string feature_path;
  std::string scenario_name;
  std::vector<TestAction> actions;
};

struct StepIssue {
  std::string step_text;
  std::string reason;  // "unbound", "ambiguous", ...
  std::vector<std::string> candidates;  // matching patterns when ambiguous
};

/// Compilation failure listing every offending step, not just the first.
struct CompileError {
  std::vector<StepIssue> issues;

  std::string summary() const;
};

using CompileOutcome = std::variant<TestCase, CompileError>;

/// Resolves every step of the usage scenario via the binding set. Feature
/// name/path on the returned TestCase are left for the caller to fill.
CompileOutcome compile_test(const UsageScenario& scenario, const BindingSet& bindings);

enum class Verdict { Pass, Fail, Error };

const char* to_string(Verdict verdict);

struct FailedExpectation {
  std::string step_text;
  Event expected;
};

struct TestResult {
  Verdict verdict = Verdict::Pass;
  std::optional<FailedExpectation> failed_expectation;  // present iff Fail
  std::vector<SuperstepTrace> traces;
  std::vector<Violation> violations;  // surfaced from all traces
  std::string error_cause;            // nonempty iff Error
};

/// Runs a compiled test on a fresh engine. Injections execute in action
/// order; each expectation must then match at or after its governing
/// injection's position in the concatenated trace, at a strictly
/// increasing cursor. A Contradiction or Livelock violation yields Error
/// regardless of expectations.
TestResult run_test(const TestCase& test, const ScenarioSpec& spec,
                    const EngineConfig& config = {});

struct ScenarioResult {
  std::string scenario_name;
  TestResult result;
};

struct FeatureResult {
  std::string feature_path;
  std::string feature_name;
  std::optional<std::string> story_ref;
  std::vector<ScenarioResult> scenarios;
};

struct SuiteCounts {
  int pass = 0;
  int fail = 0;
  int error = 0;

  int total() const { return pass + fail + error; }
  bool operator==(const SuiteCounts&) const = default;
};

struct SuiteResult {
  std::vector<FeatureResult> features;  // ordered by feature path
  SuiteCounts counts;
};

/// Compiles and runs every usage scenario of every feature on an isolated
/// engine. Compile failures become Error verdicts for the affected
/// scenario only. Results are ordered by (feature path, scenario index).
SuiteResult run_suite(const std::vector<Feature>& features, const ScenarioSpec& spec,
                      const BindingSet& bindings, const EngineConfig& config = {});

/// JUnit-style XML: one testsuite per feature, one testcase per usage
/// scenario, the failure message carrying the failed step text.
std::string to_junit_xml(const SuiteResult& suite);

}  // namespace scenval
