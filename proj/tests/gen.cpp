#include "gen.hpp"

#include <algorithm>
#include <set>

namespace scenval::testing {

std::vector<Event> small_alphabet(Gen& gen, int count) {
  const std::vector<std::string> roles = {"alpha", "beta", "gamma"};
  const std::vector<std::string> messages = {"ping", "pong", "load", "move", "stop", "ack"};

  std::vector<Event> all;
  for (const auto& sender : roles) {
    for (const auto& receiver : roles) {
      for (const auto& message : messages) {
        all.push_back({sender, receiver, message, {}});
      }
    }
  }
  std::shuffle(all.begin(), all.end(), gen.rng());
  all.resize(static_cast<std::size_t>(count));
  return all;
}

ScenarioSpec random_small_spec(Gen& gen, const std::vector<Event>& alphabet,
                               int max_scenarios, int max_steps) {
  ScenarioSpec spec;
  int scenario_count = gen.range(1, max_scenarios);
  for (int i = 0; i < scenario_count; ++i) {
    FormalScenario scenario;
    scenario.name = "S" + std::to_string(i + 1);
    scenario.trigger = pattern_of(gen.pick(alphabet));
    int step_count = gen.range(0, max_steps);
    for (int j = 0; j < step_count; ++j) {
      ScenarioStep step;
      int kind = gen.range(0, 2);
      step.kind = kind == 0   ? StepKind::Request
                  : kind == 1 ? StepKind::WaitFor
                              : StepKind::Forbid;
      step.event = pattern_of(gen.pick(alphabet));
      scenario.steps.push_back(std::move(step));
    }
    spec.scenarios.push_back(std::move(scenario));
  }
  return spec;
}

std::vector<Event> random_injections(Gen& gen, const std::vector<Event>& alphabet,
                                     int max_len) {
  std::vector<Event> injections;
  int length = gen.range(1, max_len);
  for (int i = 0; i < length; ++i) injections.push_back(gen.pick(alphabet));
  return injections;
}

ScenarioSpec random_rich_spec(Gen& gen) {
  const std::vector<std::string> roles = {"driver", "navi", "planner", "depot", "grid"};
  const std::vector<std::string> messages = {"requestRoute", "freightInfo", "charge",
                                             "notify", "sync_", "m1"};
  const std::vector<std::string> literals = {
      "x", "route A", "", "with \"quotes\"", "back\\slash", "tab\tand\nnewline", "über"};

  ScenarioSpec spec;
  int role_count = gen.range(0, 3);
  std::set<std::string> declared;
  for (int i = 0; i < role_count; ++i) declared.insert(gen.pick(roles));
  for (const auto& role : declared) spec.roles.push_back({role});

  auto random_pattern = [&]() {
    EventPattern pattern;
    pattern.receiver = gen.pick(roles);
    pattern.sender = gen.chance(30) ? pattern.receiver : gen.pick(roles);
    pattern.message = gen.pick(messages);
    int arg_count = gen.range(0, 3);
    for (int i = 0; i < arg_count; ++i) {
      if (gen.chance(25)) {
        pattern.args.emplace_back(Wildcard{});
      } else {
        pattern.args.emplace_back(gen.pick(literals));
      }
    }
    return pattern;
  };

  int scenario_count = gen.range(0, 5);
  for (int i = 0; i < scenario_count; ++i) {
    FormalScenario scenario;
    scenario.name = "Scenario_" + std::to_string(i);
    scenario.trigger = random_pattern();
    int step_count = gen.range(0, 4);
    for (int j = 0; j < step_count; ++j) {
      ScenarioStep step;
      int kind = gen.range(0, 2);
      step.kind = kind == 0   ? StepKind::Request
                  : kind == 1 ? StepKind::WaitFor
                              : StepKind::Forbid;
      step.event = random_pattern();
      if (step.kind == StepKind::Request) {
        // keep requests ground so validation stays clean
        for (auto& arg : step.event.args) {
          if (std::holds_alternative<Wildcard>(arg)) arg = std::string("g");
        }
      }
      scenario.steps.push_back(std::move(step));
    }
    spec.scenarios.push_back(std::move(scenario));
  }
  return spec;
}

}  // namespace scenval::testing
