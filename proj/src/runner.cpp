#include "scenval/runner.hpp"

#include <algorithm>
#include <sstream>

namespace scenval {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Error: return "error";
  }
  return "error";
}

std::string CompileError::summary() const {
  std::ostringstream out;
  out << "unresolved steps:";
  for (const auto& issue : issues) {
    out << " [" << issue.reason << "] \"" << issue.step_text << "\"";
    if (!issue.candidates.empty()) {
      out << " (matches:";
      for (const auto& candidate : issue.candidates) out << " \"" << candidate << "\"";
      out << ")";
    }
  }
  return out.str();
}

CompileOutcome compile_test(const UsageScenario& scenario, const BindingSet& bindings) {
  TestCase test;
  test.scenario_name = scenario.name;

  CompileError error;
  ActionMode mode = ActionMode::Inject;
  bool saw_inject = false;

  for (const auto& step : scenario.steps) {
    switch (step.keyword) {
      case StepKeyword::Given:
      case StepKeyword::When:
        mode = ActionMode::Inject;
        break;
      case StepKeyword::Then:
        mode = ActionMode::Expect;
        break;
      case StepKeyword::And:
      case StepKeyword::But:
        break;  // inherit
    }
    if (mode == ActionMode::Expect && !saw_inject) {
      // Unreachable for parsed features (they start with Given/When);
      // guards direct API use.
      error.issues.push_back({step.text, "expectation precedes any injection", {}});
      continue;
    }
    saw_inject |= mode == ActionMode::Inject;

    StepResolution resolution = resolve_step(bindings, step.text);
    if (resolution.status != ResolutionStatus::Resolved) {
      error.issues.push_back(
          {step.text,
           resolution.status == ResolutionStatus::Unbound ? "unbound" : "ambiguous",
           resolution.candidates});
      continue;
    }
    test.actions.push_back({mode, std::move(resolution.event), step.text, step.keyword});
  }

  if (!error.issues.empty()) return error;
  return test;
}

TestResult run_test(const TestCase& test, const ScenarioSpec& spec,
                    const EngineConfig& config) {
  Engine engine(spec, config);
  TestResult result;

  struct Expectation {
    const TestAction* action;
    std::size_t injection_offset;  // index of the governing injected event
  };
  std::vector<Event> executed;
  std::vector<Expectation> expectations;
  std::size_t last_injection_offset = 0;

  for (const auto& action : test.actions) {
    if (action.mode == ActionMode::Inject) {
      last_injection_offset = executed.size();
      SuperstepTrace trace = engine.inject(action.event);
      for (const auto& entry : trace.executed) executed.push_back(entry.event);
      for (const auto& violation : trace.violations) result.violations.push_back(violation);
      result.traces.push_back(std::move(trace));
    } else {
      expectations.push_back({&action, last_injection_offset});
    }
  }

  for (const auto& violation : result.violations) {
    if (violation.kind == ViolationKind::Contradiction) {
      result.verdict = Verdict::Error;
      result.error_cause = "contradiction: " + to_string(violation.event) +
                           " requested but forbidden";
      return result;
    }
    if (violation.kind == ViolationKind::Livelock) {
      result.verdict = Verdict::Error;
      result.error_cause =
          "livelock: superstep exceeded " + std::to_string(violation.bound) + " events";
      return result;
    }
  }

  std::size_t cursor = 0;
  for (const auto& expectation : expectations) {
    std::size_t start = std::max(cursor, expectation.injection_offset);
    bool matched = false;
    for (std::size_t i = start; i < executed.size(); ++i) {
      if (executed[i] == expectation.action->event) {
        cursor = i + 1;
        matched = true;
        break;
      }
    }
    if (!matched) {
      result.verdict = Verdict::Fail;
      result.failed_expectation =
          FailedExpectation{expectation.action->step_text, expectation.action->event};
      return result;
    }
  }

  result.verdict = Verdict::Pass;
  return result;
}

SuiteResult run_suite(const std::vector<Feature>& features, const ScenarioSpec& spec,
                      const BindingSet& bindings, const EngineConfig& config) {
  SuiteResult suite;

  std::vector<const Feature*> ordered;
  ordered.reserve(features.size());
  for (const auto& feature : features) ordered.push_back(&feature);
  std::stable_sort(ordered.begin(), ordered.end(), [](const Feature* a, const Feature* b) {
    return a->source_path < b->source_path;
  });

  for (const Feature* feature : ordered) {
    FeatureResult feature_result;
    feature_result.feature_path = feature->source_path;
    feature_result.feature_name = feature->name;
    feature_result.story_ref = feature->story_ref;

    for (const auto& scenario : feature->usage_scenarios) {
      ScenarioResult scenario_result;
      scenario_result.scenario_name = scenario.name;

      CompileOutcome outcome = compile_test(scenario, bindings);
      if (auto* error = std::get_if<CompileError>(&outcome)) {
        scenario_result.result.verdict = Verdict::Error;
        scenario_result.result.error_cause = error->summary();
      } else {
        TestCase& test = std::get<TestCase>(outcome);
        test.feature_name = feature->name;
        test.feature_path = feature->source_path;
        scenario_result.result = run_test(test, spec, config);
      }

      switch (scenario_result.result.verdict) {
        case Verdict::Pass: ++suite.counts.pass; break;
        case Verdict::Fail: ++suite.counts.fail; break;
        case Verdict::Error: ++suite.counts.error; break;
      }
      feature_result.scenarios.push_back(std::move(scenario_result));
    }
    suite.features.push_back(std::move(feature_result));
  }

  return suite;
}

namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string to_junit_xml(const SuiteResult& suite) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<testsuites tests=\"" << suite.counts.total() << "\" failures=\""
      << suite.counts.fail << "\" errors=\"" << suite.counts.error << "\">\n";
  for (const auto& feature : suite.features) {
    int failures = 0, errors = 0;
    for (const auto& scenario : feature.scenarios) {
      if (scenario.result.verdict == Verdict::Fail) ++failures;
      if (scenario.result.verdict == Verdict::Error) ++errors;
    }
    out << "  <testsuite name=\"" << xml_escape(feature.feature_name) << "\" tests=\""
        << feature.scenarios.size() << "\" failures=\"" << failures << "\" errors=\""
        << errors << "\">\n";
    for (const auto& scenario : feature.scenarios) {
      out << "    <testcase classname=\"" << xml_escape(feature.feature_path)
          << "\" name=\"" << xml_escape(scenario.scenario_name) << "\"";
      const TestResult& result = scenario.result;
      if (result.verdict == Verdict::Pass) {
        out << "/>\n";
        continue;
      }
      out << ">\n";
      if (result.verdict == Verdict::Fail) {
        out << "      <failure message=\""
            << xml_escape(result.failed_expectation->step_text) << "\">expected event "
            << xml_escape(to_string(result.failed_expectation->expected))
            << "</failure>\n";
      } else {
        out << "      <error message=\"" << xml_escape(result.error_cause) << "\"/>\n";
      }
      out << "    </testcase>\n";
    }
    out << "  </testsuite>\n";
  }
  out << "</testsuites>\n";
  return out.str();
}

}  // namespace scenval
