#include <doctest.h>

#include "gen.hpp"
#include "scenval/model.hpp"

using namespace scenval;

namespace {

Event ev(const std::string& sender, const std::string& receiver,
         const std::string& message, std::vector<std::string> args = {}) {
  return Event{sender, receiver, message, std::move(args)};
}

}  // namespace

TEST_CASE("event matching on ground patterns") {
  Event request_route = ev("vehicleDriver", "navi", "requestRoute");
  CHECK(event_matches(pattern_of(request_route), request_route));

  CHECK_FALSE(event_matches(pattern_of(ev("a", "b", "m")), ev("a", "b", "n")));
  CHECK_FALSE(event_matches(pattern_of(ev("a", "b", "m")), ev("a", "c", "m")));
  CHECK_FALSE(event_matches(pattern_of(ev("a", "b", "m")), ev("c", "b", "m")));
}

TEST_CASE("wildcard and arity rules") {
  EventPattern pattern{"a", "b", "m", {std::string("x"), Wildcard{}}};
  CHECK(event_matches(pattern, ev("a", "b", "m", {"x", "y"})));
  CHECK(event_matches(pattern, ev("a", "b", "m", {"x", "z"})));
  CHECK_FALSE(event_matches(pattern, ev("a", "b", "m", {"y", "y"})));
  CHECK_FALSE(event_matches(pattern, ev("a", "b", "m", {"x"})));
  CHECK_FALSE(event_matches(pattern, ev("a", "b", "m", {"x", "y", "z"})));

  EventPattern no_args{"a", "b", "m", {}};
  CHECK(event_matches(no_args, ev("a", "b", "m")));
  CHECK(event_matches(no_args, ev("a", "b", "m", {"1", "2", "3"})));
}

TEST_CASE("matching is reflexive on ground patterns and deterministic") {
  scenval::testing::Gen gen(1234);
  auto alphabet = scenval::testing::small_alphabet(gen, 6);
  for (const auto& event : alphabet) {
    CHECK(event_matches(pattern_of(event), event));
  }
  Event with_args = ev("a", "b", "m", {"p", "q"});
  CHECK(event_matches(pattern_of(with_args), with_args));
  for (int i = 0; i < 10; ++i) {
    CHECK(event_matches(pattern_of(with_args), with_args));
  }
}

TEST_CASE("self events are legal") {
  Event self = ev("routePlaner", "routePlaner", "calculateRoutes");
  CHECK(event_matches(pattern_of(self), self));
}

TEST_CASE("ground pattern helpers") {
  EventPattern ground{"a", "b", "m", {std::string("x")}};
  CHECK(is_ground(ground));
  CHECK(as_ground_event(ground) == ev("a", "b", "m", {"x"}));

  EventPattern wild{"a", "b", "m", {Wildcard{}}};
  CHECK_FALSE(is_ground(wild));
  CHECK_FALSE(as_ground_event(wild).has_value());
}

TEST_CASE("canonical event rendering") {
  CHECK(to_string(ev("a", "b", "m")) == "a->b.m()");
  CHECK(to_string(ev("a", "b", "m", {"x", "y"})) == "a->b.m(x,y)");
  EventPattern pattern{"a", "b", "m", {std::string("x"), Wildcard{}}};
  CHECK(to_string(pattern) == "a->b.m(x,*)");
}

namespace {

ScenarioSpec route_request_spec() {
  ScenarioSpec spec;
  FormalScenario scenario;
  scenario.name = "RouteRequest";
  scenario.trigger = pattern_of(ev("vehicleDriver", "navi", "requestRoute"));
  scenario.steps.push_back(
      {StepKind::Request, pattern_of(ev("navi", "routePlaner", "freightInfo"))});
  scenario.steps.push_back(
      {StepKind::Request, pattern_of(ev("routePlaner", "routePlaner", "calculateRoutes"))});
  spec.scenarios.push_back(std::move(scenario));
  return spec;
}

}  // namespace

TEST_CASE("validate_spec accepts the route-request spec without role declarations") {
  CHECK(validate_spec(route_request_spec()).empty());
}

TEST_CASE("validate_spec flags duplicate scenario names") {
  ScenarioSpec spec = route_request_spec();
  spec.scenarios.push_back(spec.scenarios.front());
  auto diagnostics = validate_spec(spec);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].severity == Severity::Error);
  CHECK(diagnostics[0].message.find("duplicate scenario name 'RouteRequest'") !=
        std::string::npos);
}

TEST_CASE("validate_spec flags non-ground requests") {
  ScenarioSpec spec;
  FormalScenario scenario;
  scenario.name = "A";
  scenario.trigger = pattern_of(ev("a", "b", "t"));
  scenario.steps.push_back({StepKind::Request, EventPattern{"a", "b", "m", {Wildcard{}}}});
  spec.scenarios.push_back(scenario);

  auto diagnostics = validate_spec(spec);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].severity == Severity::Error);
  CHECK(diagnostics[0].message.find("non-ground request") != std::string::npos);

  // waitfor/forbid may use wildcards freely
  spec.scenarios[0].steps[0].kind = StepKind::Forbid;
  CHECK(validate_spec(spec).empty());
  spec.scenarios[0].steps[0].kind = StepKind::WaitFor;
  CHECK(validate_spec(spec).empty());
}

TEST_CASE("validate_spec warns about undeclared roles only when any role is declared") {
  ScenarioSpec spec = route_request_spec();
  CHECK(validate_spec(spec).empty());  // no declarations, no warnings

  spec.roles.push_back({"vehicleDriver"});
  auto diagnostics = validate_spec(spec);
  REQUIRE(diagnostics.size() == 2);
  CHECK(diagnostics[0].severity == Severity::Warning);
  CHECK(diagnostics[0].message.find("navi") != std::string::npos);
  CHECK(diagnostics[1].message.find("routePlaner") != std::string::npos);

  spec.roles.push_back({"navi"});
  spec.roles.push_back({"routePlaner"});
  CHECK(validate_spec(spec).empty());
}

TEST_CASE("identifier check") {
  CHECK(is_identifier("vehicleDriver"));
  CHECK(is_identifier("_x9"));
  CHECK_FALSE(is_identifier(""));
  CHECK_FALSE(is_identifier("9x"));
  CHECK_FALSE(is_identifier("a-b"));
}
