#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scenval/backlog.hpp"
#include "scenval/feature.hpp"
#include "scenval/model.hpp"
#include "scenval/runner.hpp"

namespace scenval {

struct GoalNode {
  std::string id;
  std::string title;
  std::vector<std::string> epic_ids;
};

struct EpicNode {
  std::string id;
  std::string text;
  std::vector<std::string> goal_ids;
  std::vector<std::string> story_ids;
};

struct StoryNode {
  std::string id;
  std::string epic_id;
  std::string text;
  std::vector<std::string> feature_paths;
};

struct FeatureNode {
  std::string path;
  std::string name;
  std::optional<std::string> story_ref;
  std::vector<std::string> scenario_names;
};

/// The goals → epics → stories → features → usage-scenarios hierarchy.
/// Nodes are sorted by id (features by path); the graph is acyclic by
/// construction. Every feature lands in exactly one of the linked,
/// dangling (unknown story id) or unlinked (no story tag) sets.
struct TraceGraph {
  std::vector<GoalNode> goals;
  std::vector<EpicNode> epics;
  std::vector<StoryNode> stories;
  std::vector<FeatureNode> features;
  std::vector<std::string> linked_features;
  std::vector<std::string> dangling_features;
  std::vector<std::string> unlinked_features;
  std::vector<Diagnostic> diagnostics;
};

/// Builds the traceability graph from backlog records and parsed features.
TraceGraph link(const Backlog& backlog, const std::vector<Feature>& features);

enum class NodeStatus { Covered, PartiallyCovered, Uncovered, Failing };

const char* to_string(NodeStatus status);

/// Per-node verdict rollup. Usage scenarios are keyed "<feature path>#<index>".
struct CoverageStatus {
  std::map<std::string, NodeStatus> goals;
  std::map<std::string, NodeStatus> epics;
  std::map<std::string, NodeStatus> stories;
  std::map<std::string, NodeStatus> features;
  std::map<std::string, NodeStatus> usage_scenarios;
};

class UnknownFeatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rolls suite verdicts up the hierarchy: a scenario is Covered iff it
/// passed and Failing otherwise; ancestors aggregate their children with
/// Failing > PartiallyCovered > Uncovered precedence, and nodes without
/// any validated descendant are Uncovered. Throws UnknownFeatureError if
/// the suite references a feature absent from the graph.
CoverageStatus rollup(const TraceGraph& graph, const SuiteResult& suite);

struct InputDigest {
  std::string path;
  std::string digest;
};

struct ReportMeta {
  std::string tool = "scenval";
  std::string version = "0.1.0";
  std::string generated;  // ISO-8601 UTC; the single nondeterministic field
  std::vector<InputDigest> inputs;
};

/// Everything the living documentation renders from.
struct LivingDocReport {
  TraceGraph graph;
  CoverageStatus statuses;
  SuiteResult suite;
  std::vector<Diagnostic> spec_diagnostics;
  ReportMeta meta;
};

enum class ReportFormat { Json, Markdown };

/// Deterministic rendering: stable key order, sorted node ids; two renders
/// of the same report (same timestamp) are byte-identical.
std::string render(const LivingDocReport& report, ReportFormat format);

std::string render_json(const LivingDocReport& report);
std::string render_markdown(const LivingDocReport& report);

}  // namespace scenval
