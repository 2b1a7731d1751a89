#include "scenval/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "scenval/trace_io.hpp"

namespace scenval {

const char* to_string(NodeStatus status) {
  switch (status) {
    case NodeStatus::Covered: return "covered";
    case NodeStatus::PartiallyCovered: return "partially_covered";
    case NodeStatus::Uncovered: return "uncovered";
    case NodeStatus::Failing: return "failing";
  }
  return "uncovered";
}

TraceGraph link(const Backlog& backlog, const std::vector<Feature>& features) {
  TraceGraph graph;

  std::set<std::string> goal_ids, epic_ids, story_ids;
  for (const auto& goal : backlog.goals) {
    graph.goals.push_back({goal.id, goal.title, {}});
    goal_ids.insert(goal.id);
  }
  for (const auto& epic : backlog.epics) {
    graph.epics.push_back({epic.id, epic.text, epic.goal_ids, {}});
    epic_ids.insert(epic.id);
  }
  for (const auto& story : backlog.stories) {
    graph.stories.push_back({story.id, story.epic_id, story.text, {}});
    story_ids.insert(story.id);
  }

  std::sort(graph.goals.begin(), graph.goals.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(graph.epics.begin(), graph.epics.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(graph.stories.begin(), graph.stories.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  auto find_epic = [&](const std::string& id) -> EpicNode* {
    for (auto& epic : graph.epics) {
      if (epic.id == id) return &epic;
    }
    return nullptr;
  };
  auto find_story = [&](const std::string& id) -> StoryNode* {
    for (auto& story : graph.stories) {
      if (story.id == id) return &story;
    }
    return nullptr;
  };

  // epic -> goal edges
  for (auto& epic : graph.epics) {
    for (const auto& goal_id : epic.goal_ids) {
      if (!goal_ids.count(goal_id)) {
        graph.diagnostics.push_back(
            {Severity::Warning,
             "epic '" + epic.id + "' references unknown goal '" + goal_id + "'"});
      }
    }
  }
  for (auto& goal : graph.goals) {
    for (const auto& epic : graph.epics) {
      if (std::find(epic.goal_ids.begin(), epic.goal_ids.end(), goal.id) !=
          epic.goal_ids.end()) {
        goal.epic_ids.push_back(epic.id);
      }
    }
  }

  // story -> epic edges
  for (const auto& story : graph.stories) {
    if (EpicNode* epic = find_epic(story.epic_id)) {
      epic->story_ids.push_back(story.id);
    } else {
      graph.diagnostics.push_back(
          {Severity::Warning,
           "story '" + story.id + "' references unknown epic '" + story.epic_id + "'"});
    }
  }

  // feature -> story edges
  std::vector<const Feature*> ordered;
  for (const auto& feature : features) ordered.push_back(&feature);
  std::stable_sort(ordered.begin(), ordered.end(), [](const Feature* a, const Feature* b) {
    return a->source_path < b->source_path;
  });

  for (const Feature* feature : ordered) {
    FeatureNode node;
    node.path = feature->source_path;
    node.name = feature->name;
    node.story_ref = feature->story_ref;
    for (const auto& scenario : feature->usage_scenarios) {
      node.scenario_names.push_back(scenario.name);
    }
    graph.features.push_back(std::move(node));

    if (!feature->story_ref) {
      graph.unlinked_features.push_back(feature->source_path);
      graph.diagnostics.push_back(
          {Severity::Warning, "feature '" + feature->name + "' (" + feature->source_path +
                                  ") is not linked to any story"});
      continue;
    }
    if (StoryNode* story = find_story(*feature->story_ref)) {
      story->feature_paths.push_back(feature->source_path);
      graph.linked_features.push_back(feature->source_path);
    } else {
      graph.dangling_features.push_back(feature->source_path);
      graph.diagnostics.push_back(
          {Severity::Warning, "feature '" + feature->name + "' (" + feature->source_path +
                                  ") references unknown story '" + *feature->story_ref +
                                  "'"});
    }
  }

  return graph;
}

namespace {

NodeStatus aggregate(const std::vector<NodeStatus>& children) {
  if (std::any_of(children.begin(), children.end(),
                  [](NodeStatus s) { return s == NodeStatus::Failing; })) {
    return NodeStatus::Failing;
  }
  bool all_uncovered = std::all_of(children.begin(), children.end(), [](NodeStatus s) {
    return s == NodeStatus::Uncovered;
  });
  if (children.empty() || all_uncovered) return NodeStatus::Uncovered;
  bool all_covered = std::all_of(children.begin(), children.end(), [](NodeStatus s) {
    return s == NodeStatus::Covered;
  });
  if (all_covered) return NodeStatus::Covered;
  return NodeStatus::PartiallyCovered;
}

}  // namespace

CoverageStatus rollup(const TraceGraph& graph, const SuiteResult& suite) {
  CoverageStatus status;

  std::set<std::string> known_features;
  for (const auto& feature : graph.features) known_features.insert(feature.path);
  for (const auto& feature : suite.features) {
    if (!known_features.count(feature.feature_path)) {
      throw UnknownFeatureError("suite references feature '" + feature.feature_path +
                                "' absent from the trace graph");
    }
  }

  // Scenario verdicts, keyed "<path>#<index>".
  std::map<std::string, std::vector<NodeStatus>> scenario_statuses_by_feature;
  for (const auto& feature : suite.features) {
    auto& children = scenario_statuses_by_feature[feature.feature_path];
    for (std::size_t i = 0; i < feature.scenarios.size(); ++i) {
      NodeStatus s = feature.scenarios[i].result.verdict == Verdict::Pass
                         ? NodeStatus::Covered
                         : NodeStatus::Failing;
      status.usage_scenarios[feature.feature_path + "#" + std::to_string(i)] = s;
      children.push_back(s);
    }
  }

  for (const auto& feature : graph.features) {
    auto it = scenario_statuses_by_feature.find(feature.path);
    if (it == scenario_statuses_by_feature.end()) {
      // Feature known to the graph but absent from the suite: nothing ran.
      for (std::size_t i = 0; i < feature.scenario_names.size(); ++i) {
        status.usage_scenarios[feature.path + "#" + std::to_string(i)] =
            NodeStatus::Uncovered;
      }
      status.features[feature.path] = NodeStatus::Uncovered;
      continue;
    }
    status.features[feature.path] = aggregate(it->second);
  }

  for (const auto& story : graph.stories) {
    std::vector<NodeStatus> children;
    for (const auto& path : story.feature_paths) children.push_back(status.features[path]);
    status.stories[story.id] = aggregate(children);
  }
  for (const auto& epic : graph.epics) {
    std::vector<NodeStatus> children;
    for (const auto& story_id : epic.story_ids) children.push_back(status.stories[story_id]);
    status.epics[epic.id] = aggregate(children);
  }
  for (const auto& goal : graph.goals) {
    std::vector<NodeStatus> children;
    for (const auto& epic_id : goal.epic_ids) children.push_back(status.epics[epic_id]);
    status.goals[goal.id] = aggregate(children);
  }

  return status;
}

namespace {

using nlohmann::ordered_json;

ordered_json statuses_to_json(const std::map<std::string, NodeStatus>& statuses) {
  ordered_json out = ordered_json::object();
  for (const auto& [id, s] : statuses) out[id] = to_string(s);
  return out;
}

ordered_json suite_to_json(const SuiteResult& suite) {
  ordered_json results = ordered_json::array();
  for (const auto& feature : suite.features) {
    ordered_json feature_json;
    feature_json["feature"] = feature.feature_path;
    feature_json["name"] = feature.feature_name;
    feature_json["story"] = feature.story_ref ? ordered_json(*feature.story_ref)
                                              : ordered_json(nullptr);
    ordered_json scenarios = ordered_json::array();
    for (const auto& scenario : feature.scenarios) {
      ordered_json scenario_json;
      scenario_json["name"] = scenario.scenario_name;
      scenario_json["verdict"] = to_string(scenario.result.verdict);
      if (scenario.result.failed_expectation) {
        scenario_json["failed_step"] = scenario.result.failed_expectation->step_text;
        scenario_json["expected_event"] =
            to_string(scenario.result.failed_expectation->expected);
      }
      if (!scenario.result.error_cause.empty()) {
        scenario_json["error"] = scenario.result.error_cause;
      }
      ordered_json traces = ordered_json::array();
      for (const auto& trace : scenario.result.traces) traces.push_back(to_json(trace));
      scenario_json["traces"] = std::move(traces);
      scenarios.push_back(std::move(scenario_json));
    }
    feature_json["scenarios"] = std::move(scenarios);
    results.push_back(std::move(feature_json));
  }
  return results;
}

ordered_json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
  ordered_json out = ordered_json::array();
  for (const auto& diagnostic : diagnostics) {
    out.push_back({{"severity", to_string(diagnostic.severity)},
                   {"message", diagnostic.message}});
  }
  return out;
}

}  // namespace

std::string render_json(const LivingDocReport& report) {
  ordered_json root;

  ordered_json meta;
  meta["tool"] = report.meta.tool;
  meta["version"] = report.meta.version;
  meta["generated"] = report.meta.generated;
  ordered_json inputs = ordered_json::array();
  for (const auto& input : report.meta.inputs) {
    inputs.push_back({{"path", input.path}, {"digest", input.digest}});
  }
  meta["inputs"] = std::move(inputs);
  root["meta"] = std::move(meta);

  ordered_json graph;
  ordered_json goals = ordered_json::array();
  for (const auto& goal : report.graph.goals) {
    goals.push_back({{"id", goal.id}, {"title", goal.title}, {"epics", goal.epic_ids}});
  }
  graph["goals"] = std::move(goals);
  ordered_json epics = ordered_json::array();
  for (const auto& epic : report.graph.epics) {
    epics.push_back({{"id", epic.id},
                     {"text", epic.text},
                     {"goals", epic.goal_ids},
                     {"stories", epic.story_ids}});
  }
  graph["epics"] = std::move(epics);
  ordered_json stories = ordered_json::array();
  for (const auto& story : report.graph.stories) {
    stories.push_back({{"id", story.id},
                       {"epic", story.epic_id},
                       {"text", story.text},
                       {"features", story.feature_paths}});
  }
  graph["stories"] = std::move(stories);
  ordered_json features = ordered_json::array();
  for (const auto& feature : report.graph.features) {
    features.push_back({{"path", feature.path},
                        {"name", feature.name},
                        {"story", feature.story_ref ? ordered_json(*feature.story_ref)
                                                    : ordered_json(nullptr)},
                        {"scenarios", feature.scenario_names}});
  }
  graph["features"] = std::move(features);
  graph["linked"] = report.graph.linked_features;
  graph["dangling"] = report.graph.dangling_features;
  graph["unlinked"] = report.graph.unlinked_features;
  graph["diagnostics"] = diagnostics_to_json(report.graph.diagnostics);
  root["graph"] = std::move(graph);

  ordered_json statuses;
  statuses["goals"] = statuses_to_json(report.statuses.goals);
  statuses["epics"] = statuses_to_json(report.statuses.epics);
  statuses["stories"] = statuses_to_json(report.statuses.stories);
  statuses["features"] = statuses_to_json(report.statuses.features);
  statuses["usage_scenarios"] = statuses_to_json(report.statuses.usage_scenarios);
  root["statuses"] = std::move(statuses);

  root["summary"] = {{"pass", report.suite.counts.pass},
                     {"fail", report.suite.counts.fail},
                     {"error", report.suite.counts.error}};
  root["results"] = suite_to_json(report.suite);

  ordered_json violations = ordered_json::array();
  for (const auto& feature : report.suite.features) {
    for (const auto& scenario : feature.scenarios) {
      for (const auto& violation : scenario.result.violations) {
        ordered_json entry;
        entry["feature"] = feature.feature_path;
        entry["scenario"] = scenario.scenario_name;
        entry["violation"] = to_json(violation);
        violations.push_back(std::move(entry));
      }
    }
  }
  root["violations"] = std::move(violations);

  root["spec_diagnostics"] = diagnostics_to_json(report.spec_diagnostics);

  return root.dump(2) + "\n";
}

namespace {

const char* glyph(NodeStatus status) {
  switch (status) {
    case NodeStatus::Covered: return "[ok]";
    case NodeStatus::PartiallyCovered: return "[~]";
    case NodeStatus::Uncovered: return "[--]";
    case NodeStatus::Failing: return "[!!]";
  }
  return "[--]";
}

NodeStatus status_or(const std::map<std::string, NodeStatus>& statuses,
                     const std::string& id) {
  auto it = statuses.find(id);
  return it == statuses.end() ? NodeStatus::Uncovered : it->second;
}

void render_feature_md(std::ostringstream& out, const LivingDocReport& report,
                       const FeatureNode& feature, const std::string& indent) {
  out << indent << "- " << glyph(status_or(report.statuses.features, feature.path))
      << " Feature: " << feature.name << " (`" << feature.path << "`)\n";
  const FeatureResult* result = nullptr;
  for (const auto& candidate : report.suite.features) {
    if (candidate.feature_path == feature.path) result = &candidate;
  }
  for (std::size_t i = 0; i < feature.scenario_names.size(); ++i) {
    std::string key = feature.path + "#" + std::to_string(i);
    out << indent << "  - " << glyph(status_or(report.statuses.usage_scenarios, key))
        << " Scenario: " << feature.scenario_names[i];
    if (result && i < result->scenarios.size()) {
      const TestResult& test = result->scenarios[i].result;
      out << " — " << to_string(test.verdict);
      if (test.failed_expectation) {
        out << " (no match for \"" << test.failed_expectation->step_text
            << "\", expected `" << to_string(test.failed_expectation->expected) << "`)";
      }
      if (!test.error_cause.empty()) out << " (" << test.error_cause << ")";
    }
    out << "\n";
  }
}

}  // namespace

std::string render_markdown(const LivingDocReport& report) {
  std::ostringstream out;
  out << "# Living documentation\n\n";
  out << "- Generated: " << report.meta.generated << "\n";
  out << "- Suite: " << report.suite.counts.total() << " scenario(s) — "
      << report.suite.counts.pass << " passed, " << report.suite.counts.fail
      << " failed, " << report.suite.counts.error << " error(s)\n\n";

  out << "## Goals\n\n";
  if (report.graph.goals.empty()) out << "(no goals in the backlog)\n";
  for (const auto& goal : report.graph.goals) {
    out << "### " << glyph(status_or(report.statuses.goals, goal.id)) << " " << goal.id
        << " — " << goal.title << "\n\n";
    if (goal.epic_ids.empty()) {
      out << "(no epics address this goal)\n\n";
      continue;
    }
    for (const auto& epic_id : goal.epic_ids) {
      const EpicNode* epic = nullptr;
      for (const auto& candidate : report.graph.epics) {
        if (candidate.id == epic_id) epic = &candidate;
      }
      if (!epic) continue;
      out << "- " << glyph(status_or(report.statuses.epics, epic->id)) << " **"
          << epic->id << "**: " << epic->text << "\n";
      for (const auto& story_id : epic->story_ids) {
        const StoryNode* story = nullptr;
        for (const auto& candidate : report.graph.stories) {
          if (candidate.id == story_id) story = &candidate;
        }
        if (!story) continue;
        out << "  - " << glyph(status_or(report.statuses.stories, story->id)) << " **"
            << story->id << "**: " << story->text << "\n";
        for (const auto& path : story->feature_paths) {
          for (const auto& feature : report.graph.features) {
            if (feature.path == path) render_feature_md(out, report, feature, "    ");
          }
        }
      }
      out << "\n";
    }
  }

  // Epics without any goal tag would otherwise be invisible.
  bool orphan_header = false;
  for (const auto& epic : report.graph.epics) {
    if (!epic.goal_ids.empty()) continue;
    if (!orphan_header) {
      out << "## Epics without goal tags\n\n";
      orphan_header = true;
    }
    out << "- " << glyph(status_or(report.statuses.epics, epic.id)) << " **" << epic.id
        << "**: " << epic.text << "\n";
  }
  if (orphan_header) out << "\n";

  if (!report.graph.unlinked_features.empty() || !report.graph.dangling_features.empty()) {
    out << "## Features without story links\n\n";
    for (const auto& path : report.graph.unlinked_features) {
      for (const auto& feature : report.graph.features) {
        if (feature.path == path) render_feature_md(out, report, feature, "");
      }
    }
    for (const auto& path : report.graph.dangling_features) {
      for (const auto& feature : report.graph.features) {
        if (feature.path == path) {
          out << "- " << glyph(status_or(report.statuses.features, feature.path))
              << " Feature: " << feature.name << " (`" << feature.path
              << "`) — unknown story '" << feature.story_ref.value_or("") << "'\n";
        }
      }
    }
    out << "\n";
  }

  out << "## Contradictions\n\n";
  bool any_contradiction = false;
  for (const auto& feature : report.suite.features) {
    for (const auto& scenario : feature.scenarios) {
      for (const auto& violation : scenario.result.violations) {
        if (violation.kind != ViolationKind::Contradiction) continue;
        any_contradiction = true;
        out << "- `" << to_string(violation.event) << "` requested by ";
        for (std::size_t i = 0; i < violation.requested_by.size(); ++i) {
          if (i) out << ", ";
          out << "**" << violation.requested_by[i] << "**";
        }
        out << " but forbidden by ";
        for (std::size_t i = 0; i < violation.forbidden_by.size(); ++i) {
          if (i) out << ", ";
          out << "**" << violation.forbidden_by[i] << "**";
        }
        out << " (" << feature.feature_path << ", scenario \"" << scenario.scenario_name
            << "\")\n";
      }
    }
  }
  if (!any_contradiction) out << "(none)\n";
  out << "\n";

  bool any_other = false;
  for (const auto& feature : report.suite.features) {
    for (const auto& scenario : feature.scenarios) {
      for (const auto& violation : scenario.result.violations) {
        if (violation.kind == ViolationKind::Contradiction) continue;
        if (!any_other) {
          out << "## Other violations\n\n";
          any_other = true;
        }
        if (violation.kind == ViolationKind::Livelock) {
          out << "- livelock after " << violation.bound << " events ("
              << feature.feature_path << ", scenario \"" << scenario.scenario_name
              << "\")\n";
        } else {
          out << "- out-of-order event `" << to_string(violation.event)
              << "` aborted scenario '" << violation.scenario << "' ("
              << feature.feature_path << ", scenario \"" << scenario.scenario_name
              << "\")\n";
        }
      }
    }
  }
  if (any_other) out << "\n";

  if (!report.spec_diagnostics.empty() || !report.graph.diagnostics.empty()) {
    out << "## Diagnostics\n\n";
    for (const auto& diagnostic : report.spec_diagnostics) {
      out << "- [" << to_string(diagnostic.severity) << "] " << diagnostic.message << "\n";
    }
    for (const auto& diagnostic : report.graph.diagnostics) {
      out << "- [" << to_string(diagnostic.severity) << "] " << diagnostic.message << "\n";
    }
    out << "\n";
  }

  return out.str();
}

std::string render(const LivingDocReport& report, ReportFormat format) {
  return format == ReportFormat::Json ? render_json(report) : render_markdown(report);
}

}  // namespace scenval
