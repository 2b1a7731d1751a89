#include "scenval/trace_io.hpp"

namespace scenval {

using nlohmann::ordered_json;

ordered_json to_json(const Violation& violation) {
  ordered_json out;
  out["kind"] = to_string(violation.kind);
  switch (violation.kind) {
    case ViolationKind::Contradiction:
      out["event"] = to_string(violation.event);
      out["requested_by"] = violation.requested_by;
      out["forbidden_by"] = violation.forbidden_by;
      break;
    case ViolationKind::Livelock:
      out["bound"] = violation.bound;
      break;
    case ViolationKind::OutOfOrder:
      out["scenario"] = violation.scenario;
      out["event"] = to_string(violation.event);
      break;
  }
  return out;
}

ordered_json to_json(const SuperstepTrace& trace) {
  ordered_json out;
  out["injected"] = to_string(trace.injected);
  auto executed = ordered_json::array();
  for (const auto& entry : trace.executed) {
    executed.push_back({{"event", to_string(entry.event)}, {"by", entry.by}});
  }
  out["executed"] = std::move(executed);
  auto violations = ordered_json::array();
  for (const auto& violation : trace.violations) violations.push_back(to_json(violation));
  out["violations"] = std::move(violations);
  out["spawned"] = trace.spawned_instances;
  out["terminated"] = trace.terminated_instances;
  out["notes"] = trace.notes;
  return out;
}

}  // namespace scenval
