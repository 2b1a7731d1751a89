#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "scenval/model.hpp"

namespace scenval {

enum class ViolationKind { Contradiction, Livelock, OutOfOrder };

const char* to_string(ViolationKind kind);

/// A detected execution problem. `event` is the blocked event for a
/// Contradiction and the offending event for an OutOfOrder abort.
struct Violation {
  ViolationKind kind = ViolationKind::Contradiction;
  Event event;
  std::vector<std::string> requested_by;  // Contradiction: at least one name
  std::vector<std::string> forbidden_by;  // Contradiction: at least one name
  std::string scenario;                   // OutOfOrder: the aborted instance
  int bound = 0;                          // Livelock: the configured limit

  bool operator==(const Violation&) const = default;
};

struct ExecutedEvent {
  Event event;
  std::string by;  // "environment" or the requesting scenario name

  bool operator==(const ExecutedEvent&) const = default;
};

/// Everything that happened between one environment injection and
/// quiescence. The first executed entry is always the injected event
/// tagged "environment".
struct SuperstepTrace {
  Event injected;
  std::vector<ExecutedEvent> executed;
  std::vector<Violation> violations;
  std::vector<std::string> spawned_instances;
  std::vector<std::string> terminated_instances;
  std::vector<std::string> notes;

  bool operator==(const SuperstepTrace&) const = default;
};

struct EngineConfig {
  int max_superstep = 1000;  // executed system events per superstep
};

/// Thrown when a specification fails static validation.
class SpecValidationError : public std::runtime_error {
 public:
  explicit SpecValidationError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Engine misuse (e.g. injection during a running superstep).
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnabledRequest {
  Event event;
  std::string scenario;
  std::size_t step_index = 0;

  bool operator==(const EnabledRequest&) const = default;
};

/// Play-out executor for a scenario specification.
///
/// Each injected environment event starts a superstep:
///   1. the event is delivered: scenarios whose trigger matches spawn an
///      instance (one live instance per scenario; a trigger during an
///      active instance is recorded as a note), instances whose current
///      waitfor/request matches advance, and an instance for which the
///      event matches a step strictly after its current one is aborted
///      with an OutOfOrder violation;
///   2. the current request steps of all instances form the pending set;
///      requests matching any instance's accumulated forbid patterns are
///      blocked;
///   3. pending but fully blocked requests end the superstep with a
///      Contradiction violation;
///   4. otherwise the minimal enabled request under (declaration order,
///      step index) executes and is delivered like an injected event;
///   5. the loop stops when no requests remain, or with a Livelock
///      violation once max_superstep events were executed.
///
/// Forbid steps execute as soon as they become current: the pattern joins
/// the instance's forbid set and stays in force until the instance is
/// removed. Instances that reach the end of their steps are removed when
/// the superstep ends, so forbids of a completed body still block within
/// the superstep that completed it.
///
/// Execution is deterministic: identical (spec, injections, config)
/// produce identical traces. One engine is strictly single-threaded.
class Engine {
 public:
  /// Rejects specs with validation errors (SpecValidationError) and
  /// non-positive bounds (std::invalid_argument).
  explicit Engine(ScenarioSpec spec, EngineConfig config = {});

  /// Runs one superstep. Throws EngineError if called reentrantly.
  SuperstepTrace inject(const Event& event);

  /// The pending requests that are not blocked, sorted by the tie-break
  /// key (scenario declaration order, then step index).
  std::vector<EnabledRequest> enabled_requests() const;

  /// True iff any live instance is currently at a request step (even a
  /// blocked one). Together with an empty enabled_requests() this is the
  /// contradiction precondition.
  bool has_pending_requests() const;

  struct InstanceView {
    std::string scenario;
    std::size_t pc = 0;
    std::vector<EventPattern> forbids;
  };
  std::vector<InstanceView> instances() const;

  const ScenarioSpec& spec() const { return spec_; }
  const EngineConfig& config() const { return config_; }

 protected:
  bool in_superstep_ = false;  // reentrancy guard

 private:
  struct Instance {
    std::size_t scenario_index = 0;
    std::size_t pc = 0;
    std::vector<EventPattern> forbids;
  };

  struct PendingRequest {
    Event event;
    std::size_t scenario_index = 0;
    std::size_t step_index = 0;
  };

  const FormalScenario& scenario_of(const Instance& instance) const;
  bool completed(const Instance& instance) const;
  void settle_forbids(Instance& instance, SuperstepTrace& trace);
  void deliver(const Event& event, const std::string& by, SuperstepTrace& trace);
  std::vector<PendingRequest> pending_requests() const;
  bool blocked(const Event& event) const;
  std::vector<std::string> forbidders_of(const Event& event) const;

  ScenarioSpec spec_;
  EngineConfig config_;
  std::vector<Instance> instances_;  // spawn order
};

}  // namespace scenval
