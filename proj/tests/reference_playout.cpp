#include "reference_playout.hpp"

namespace scenval::testing {

namespace {

const FormalScenario* find_scenario(const ScenarioSpec& spec, const std::string& name) {
  for (const auto& scenario : spec.scenarios) {
    if (scenario.name == name) return &scenario;
  }
  return nullptr;
}

std::size_t step_count(const RefState& state, const RefInstance& instance) {
  return find_scenario(state.spec, instance.scenario)->steps.size();
}

const ScenarioStep& step_at(const RefState& state, const RefInstance& instance,
                            std::size_t index) {
  return find_scenario(state.spec, instance.scenario)->steps[index];
}

// Executes consecutive forbid steps; marks the instance done at the end of
// its step list.
void ref_settle(RefState& state, RefInstance& instance, SuperstepTrace& trace) {
  while (instance.pc < step_count(state, instance) &&
         step_at(state, instance, instance.pc).kind == StepKind::Forbid) {
    instance.forbids.push_back(step_at(state, instance, instance.pc).event);
    instance.pc += 1;
  }
  if (instance.pc >= step_count(state, instance) && !instance.done) {
    instance.done = true;
    trace.terminated_instances.push_back(instance.scenario);
  }
}

bool ref_has_live_instance(const RefState& state, const std::string& name) {
  for (const auto& instance : state.instances) {
    if (instance.scenario == name && !instance.done) return true;
  }
  return false;
}

// Rule 1: delivery. Spawning precedes advancing; fresh instances also see
// the delivered event. An event matching a step strictly after an
// instance's current one aborts that instance.
void ref_deliver(RefState& state, const Event& event, const std::string& by,
                 SuperstepTrace& trace) {
  trace.executed.push_back({event, by});

  for (const auto& scenario : state.spec.scenarios) {
    if (!event_matches(scenario.trigger, event)) continue;
    if (ref_has_live_instance(state, scenario.name)) {
      trace.notes.push_back("trigger for scenario '" + scenario.name +
                            "' ignored: an instance is already active");
    } else {
      RefInstance fresh;
      fresh.scenario = scenario.name;
      state.instances.push_back(fresh);
      trace.spawned_instances.push_back(scenario.name);
      ref_settle(state, state.instances.back(), trace);
    }
  }

  std::vector<RefInstance> survivors;
  // Process in declaration order regardless of spawn order.
  for (const auto& scenario : state.spec.scenarios) {
    for (auto& instance : state.instances) {
      if (instance.scenario != scenario.name) continue;
      if (instance.done) continue;

      const ScenarioStep& current = step_at(state, instance, instance.pc);
      if (event_matches(current.event, event)) {
        instance.pc += 1;
        ref_settle(state, instance, trace);
        continue;
      }
      bool matches_later = false;
      for (std::size_t j = instance.pc + 1; j < step_count(state, instance); ++j) {
        if (event_matches(step_at(state, instance, j).event, event)) matches_later = true;
      }
      if (matches_later) {
        Violation violation;
        violation.kind = ViolationKind::OutOfOrder;
        violation.event = event;
        violation.scenario = instance.scenario;
        trace.violations.push_back(violation);
        instance.aborted = true;  // removed below, forbids and all
      }
    }
  }
  for (const auto& instance : state.instances) {
    if (!instance.aborted) survivors.push_back(instance);
  }
  state.instances = survivors;
}

struct RefRequest {
  Event event;
  std::string scenario;
  std::size_t step_index;
};

// Rule 2: pending requests in (declaration order, step index) order.
std::vector<RefRequest> ref_pending(const RefState& state) {
  std::vector<RefRequest> pending;
  for (const auto& scenario : state.spec.scenarios) {
    for (const auto& instance : state.instances) {
      if (instance.scenario != scenario.name || instance.done) continue;
      const ScenarioStep& current = step_at(state, instance, instance.pc);
      if (current.kind != StepKind::Request) continue;
      pending.push_back({*as_ground_event(current.event), instance.scenario, instance.pc});
    }
  }
  return pending;
}

bool ref_blocked(const RefState& state, const Event& event) {
  for (const auto& instance : state.instances) {
    for (const auto& forbid : instance.forbids) {
      if (event_matches(forbid, event)) return true;
    }
  }
  return false;
}

std::vector<std::string> ref_forbidders(const RefState& state, const Event& event) {
  std::vector<std::string> names;
  for (const auto& scenario : state.spec.scenarios) {
    bool found = false;
    for (const auto& instance : state.instances) {
      if (instance.scenario != scenario.name) continue;
      for (const auto& forbid : instance.forbids) {
        if (event_matches(forbid, event)) found = true;
      }
    }
    if (found) names.push_back(scenario.name);
  }
  return names;
}

}  // namespace

RefState ref_init(const ScenarioSpec& spec, int max_superstep) {
  RefState state;
  state.spec = spec;
  state.max_superstep = max_superstep;
  return state;
}

SuperstepTrace ref_superstep(RefState& state, const Event& event) {
  SuperstepTrace trace;
  trace.injected = event;
  ref_deliver(state, event, "environment", trace);

  int executed = 0;
  while (true) {
    std::vector<RefRequest> pending = ref_pending(state);
    std::vector<RefRequest> enabled;
    for (const auto& request : pending) {
      if (!ref_blocked(state, request.event)) enabled.push_back(request);
    }

    // Rule 3: pending but fully blocked is a contradiction.
    if (!pending.empty() && enabled.empty()) {
      Violation violation;
      violation.kind = ViolationKind::Contradiction;
      violation.event = pending.front().event;
      for (const auto& request : pending) {
        if (request.event == violation.event) {
          violation.requested_by.push_back(request.scenario);
        }
      }
      violation.forbidden_by = ref_forbidders(state, violation.event);
      trace.violations.push_back(violation);
      break;
    }
    // Rule 5: quiescence or the superstep bound.
    if (enabled.empty()) break;
    if (executed >= state.max_superstep) {
      Violation violation;
      violation.kind = ViolationKind::Livelock;
      violation.bound = state.max_superstep;
      trace.violations.push_back(violation);
      break;
    }
    // Rule 4: execute the tie-break-minimal enabled request.
    executed += 1;
    ref_deliver(state, enabled.front().event, enabled.front().scenario, trace);
  }

  // Completed instances disappear when the superstep ends.
  std::vector<RefInstance> survivors;
  for (const auto& instance : state.instances) {
    if (!instance.done) survivors.push_back(instance);
  }
  state.instances = survivors;
  return trace;
}

std::vector<SuperstepTrace> ref_run(const ScenarioSpec& spec,
                                    const std::vector<Event>& injections,
                                    int max_superstep) {
  RefState state = ref_init(spec, max_superstep);
  std::vector<SuperstepTrace> traces;
  for (const auto& event : injections) traces.push_back(ref_superstep(state, event));
  return traces;
}

}  // namespace scenval::testing
