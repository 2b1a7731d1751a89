#include "scenval/engine.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace scenval {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Contradiction: return "contradiction";
    case ViolationKind::Livelock: return "livelock";
    case ViolationKind::OutOfOrder: return "out_of_order";
  }
  return "contradiction";
}

namespace {

std::string render_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream out;
  out << "specification failed validation:";
  for (const auto& diagnostic : diagnostics) {
    if (diagnostic.severity == Severity::Error) out << " " << diagnostic.message << ";";
  }
  return out.str();
}

}  // namespace

SpecValidationError::SpecValidationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(render_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

Engine::Engine(ScenarioSpec spec, EngineConfig config)
    : spec_(std::move(spec)), config_(config) {
  if (config_.max_superstep < 1) {
    throw std::invalid_argument("max_superstep must be at least 1");
  }
  auto diagnostics = validate_spec(spec_);
  if (has_errors(diagnostics)) throw SpecValidationError(std::move(diagnostics));
}

const FormalScenario& Engine::scenario_of(const Instance& instance) const {
  return spec_.scenarios[instance.scenario_index];
}

bool Engine::completed(const Instance& instance) const {
  return instance.pc >= scenario_of(instance).steps.size();
}

void Engine::settle_forbids(Instance& instance, SuperstepTrace& trace) {
  const auto& steps = scenario_of(instance).steps;
  while (instance.pc < steps.size() && steps[instance.pc].kind == StepKind::Forbid) {
    instance.forbids.push_back(steps[instance.pc].event);
    ++instance.pc;
  }
  if (instance.pc >= steps.size()) {
    trace.terminated_instances.push_back(scenario_of(instance).name);
  }
}

void Engine::deliver(const Event& event, const std::string& by, SuperstepTrace& trace) {
  trace.executed.push_back({event, by});

  // Spawn phase: one live instance per scenario.
  for (std::size_t si = 0; si < spec_.scenarios.size(); ++si) {
    const auto& scenario = spec_.scenarios[si];
    if (!event_matches(scenario.trigger, event)) continue;
    bool active = std::any_of(instances_.begin(), instances_.end(),
                              [&](const Instance& instance) {
                                return instance.scenario_index == si && !completed(instance);
                              });
    if (active) {
      trace.notes.push_back("trigger for scenario '" + scenario.name +
                            "' ignored: an instance is already active");
      continue;
    }
    instances_.push_back(Instance{si, 0, {}});
    trace.spawned_instances.push_back(scenario.name);
    settle_forbids(instances_.back(), trace);
  }

  // Advance / out-of-order phase, in declaration order. Freshly spawned
  // instances see the event that spawned them.
  std::vector<std::size_t> aborted;
  for (std::size_t si = 0; si < spec_.scenarios.size(); ++si) {
    for (std::size_t idx = 0; idx < instances_.size(); ++idx) {
      Instance& instance = instances_[idx];
      if (instance.scenario_index != si || completed(instance)) continue;
      const auto& steps = scenario_of(instance).steps;
      const auto& current = steps[instance.pc];
      // settle_forbids guarantees the current step is a request or waitfor.
      if (event_matches(current.event, event)) {
        ++instance.pc;
        settle_forbids(instance, trace);
        continue;
      }
      bool later_match = false;
      for (std::size_t j = instance.pc + 1; j < steps.size() && !later_match; ++j) {
        later_match = event_matches(steps[j].event, event);
      }
      if (later_match) {
        Violation violation;
        violation.kind = ViolationKind::OutOfOrder;
        violation.event = event;
        violation.scenario = scenario_of(instance).name;
        trace.violations.push_back(std::move(violation));
        aborted.push_back(idx);
      }
    }
  }
  std::sort(aborted.begin(), aborted.end());
  for (auto it = aborted.rbegin(); it != aborted.rend(); ++it) {
    instances_.erase(instances_.begin() + static_cast<std::ptrdiff_t>(*it));
  }
}

std::vector<Engine::PendingRequest> Engine::pending_requests() const {
  std::vector<PendingRequest> pending;
  for (std::size_t si = 0; si < spec_.scenarios.size(); ++si) {
    for (const auto& instance : instances_) {
      if (instance.scenario_index != si || completed(instance)) continue;
      const auto& step = scenario_of(instance).steps[instance.pc];
      if (step.kind != StepKind::Request) continue;
      auto event = as_ground_event(step.event);
      assert(event.has_value());  // enforced by validate_spec
      pending.push_back({*std::move(event), si, instance.pc});
    }
  }
  return pending;  // already sorted by (scenario index, step index)
}

bool Engine::blocked(const Event& event) const {
  for (const auto& instance : instances_) {
    for (const auto& forbid : instance.forbids) {
      if (event_matches(forbid, event)) return true;
    }
  }
  return false;
}

std::vector<std::string> Engine::forbidders_of(const Event& event) const {
  std::vector<std::string> names;
  std::set<std::size_t> seen;
  for (std::size_t si = 0; si < spec_.scenarios.size(); ++si) {
    for (const auto& instance : instances_) {
      if (instance.scenario_index != si || seen.count(si)) continue;
      for (const auto& forbid : instance.forbids) {
        if (event_matches(forbid, event)) {
          names.push_back(scenario_of(instance).name);
          seen.insert(si);
          break;
        }
      }
    }
  }
  return names;
}

namespace {

struct FlagGuard {
  explicit FlagGuard(bool& flag) : flag_(flag) { flag_ = true; }
  ~FlagGuard() { flag_ = false; }
  bool& flag_;
};

}  // namespace

SuperstepTrace Engine::inject(const Event& event) {
  if (in_superstep_) {
    throw EngineError("injection during a running superstep");
  }
  FlagGuard guard(in_superstep_);

  SuperstepTrace trace;
  trace.injected = event;
  deliver(event, "environment", trace);

  int executed_system_events = 0;
  while (true) {
    auto pending = pending_requests();
    std::vector<PendingRequest> enabled;
    for (auto& request : pending) {
      if (!blocked(request.event)) enabled.push_back(request);
    }

    if (!pending.empty() && enabled.empty()) {
      const auto& first = pending.front();
      Violation violation;
      violation.kind = ViolationKind::Contradiction;
      violation.event = first.event;
      for (const auto& request : pending) {
        if (request.event == first.event) {
          violation.requested_by.push_back(spec_.scenarios[request.scenario_index].name);
        }
      }
      violation.forbidden_by = forbidders_of(first.event);
      trace.violations.push_back(std::move(violation));
      break;
    }
    if (enabled.empty()) break;
    if (executed_system_events >= config_.max_superstep) {
      Violation violation;
      violation.kind = ViolationKind::Livelock;
      violation.bound = config_.max_superstep;
      trace.violations.push_back(std::move(violation));
      break;
    }

    const auto& selected = enabled.front();
    ++executed_system_events;
    deliver(selected.event, spec_.scenarios[selected.scenario_index].name, trace);
  }

  // Completed instances are swept only now, so trailing forbids stayed in
  // force for the whole superstep.
  std::erase_if(instances_, [this](const Instance& instance) { return completed(instance); });

  return trace;
}

std::vector<EnabledRequest> Engine::enabled_requests() const {
  std::vector<EnabledRequest> result;
  for (const auto& request : pending_requests()) {
    if (blocked(request.event)) continue;
    result.push_back(
        {request.event, spec_.scenarios[request.scenario_index].name, request.step_index});
  }
  return result;
}

bool Engine::has_pending_requests() const { return !pending_requests().empty(); }

std::vector<Engine::InstanceView> Engine::instances() const {
  std::vector<InstanceView> views;
  views.reserve(instances_.size());
  for (std::size_t si = 0; si < spec_.scenarios.size(); ++si) {
    for (const auto& instance : instances_) {
      if (instance.scenario_index != si) continue;
      views.push_back({scenario_of(instance).name, instance.pc, instance.forbids});
    }
  }
  return views;
}

}  // namespace scenval
