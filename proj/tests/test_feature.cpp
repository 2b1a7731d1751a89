#include <doctest.h>

#include "scenval/feature.hpp"

using namespace scenval;

namespace {

const char* kRoutesFeature =
    "Feature: calculate optimized routes for delivery vehicle driver\n"
    "\n"
    "  Scenario: the vehicle driver request new routes after the vehicle was loaded with freight\n"
    "    When the vehicle driver request routes with the navigation system of the vehicle\n"
    "    Then the navigation system forwards information on the loaded freight to the route planning system\n"
    "    And the route planning systems calculates different route options\n";

}  // namespace

TEST_CASE("parses the routes feature") {
  Feature feature = parse_feature(kRoutesFeature, "routes.feature");
  CHECK(feature.name == "calculate optimized routes for delivery vehicle driver");
  CHECK_FALSE(feature.story_ref.has_value());
  REQUIRE(feature.usage_scenarios.size() == 1);

  const auto& scenario = feature.usage_scenarios[0];
  CHECK(scenario.name ==
        "the vehicle driver request new routes after the vehicle was loaded with freight");
  REQUIRE(scenario.steps.size() == 3);
  CHECK(scenario.steps[0].keyword == StepKeyword::When);
  CHECK(scenario.steps[0].text ==
        "the vehicle driver request routes with the navigation system of the vehicle");
  CHECK(scenario.steps[1].keyword == StepKeyword::Then);
  CHECK(scenario.steps[1].text ==
        "the navigation system forwards information on the loaded freight to the route "
        "planning system");
  CHECK(scenario.steps[2].keyword == StepKeyword::And);
  CHECK(scenario.steps[2].text ==
        "the route planning systems calculates different route options");
}

TEST_CASE("a @story tag preceding the feature sets the story link") {
  std::string text = std::string("@story:ASE-29\n") + kRoutesFeature;
  Feature feature = parse_feature(text, "routes.feature");
  REQUIRE(feature.story_ref.has_value());
  CHECK(*feature.story_ref == "ASE-29");
}

TEST_CASE("a bare feature has no usage scenarios") {
  Feature feature = parse_feature("Feature: x\n", "bare.feature");
  CHECK(feature.name == "x");
  CHECK(feature.usage_scenarios.empty());
}

TEST_CASE("multiple scenarios, comments and CRLF") {
  const char* text =
      "# comment\r\n"
      "Feature: two\r\n"
      "  Scenario: first\r\n"
      "    Given setup one\r\n"
      "    Then outcome one\r\n"
      "\r\n"
      "  Scenario: second\r\n"
      "    When something happens\r\n"
      "    But nothing else happens\r\n";
  Feature feature = parse_feature(text, "two.feature");
  REQUIRE(feature.usage_scenarios.size() == 2);
  CHECK(feature.usage_scenarios[0].steps.size() == 2);
  CHECK(feature.usage_scenarios[0].steps[0].keyword == StepKeyword::Given);
  CHECK(feature.usage_scenarios[1].steps[1].keyword == StepKeyword::But);
  CHECK(feature.usage_scenarios[1].steps[1].text == "nothing else happens");
}

TEST_CASE("unsupported Gherkin constructs are named") {
  auto check_unsupported = [](const std::string& text, const std::string& needle) {
    try {
      parse_feature(text, "f.feature");
      FAIL("expected ParseError for: " << needle);
    } catch (const ParseError& err) {
      CHECK(err.code() == ParseErrorCode::UnsupportedConstruct);
      CHECK(err.message().find(needle) != std::string::npos);
    }
  };

  check_unsupported("Feature: x\n  Background:\n", "Background");
  check_unsupported("Feature: x\n  Scenario Outline: y\n", "Scenario Outline");
  check_unsupported("Feature: x\n  Scenario: y\n    Given a\n    Examples:\n", "Examples");
  check_unsupported("Feature: x\n  Scenario: y\n    Given a\n    | a | b |\n",
                    "data table");
  check_unsupported("Feature: x\n  Scenario: y\n    Given a\n    \"\"\"\n", "doc string");
  check_unsupported("@wip\nFeature: x\n", "tag");
  check_unsupported("Feature: x\n@story:ASE-1\n  Scenario: y\n    Given a\n",
                    "tag after 'Feature:'");
  check_unsupported("Feature: x\nRule: r\n", "Rule");
}

TEST_CASE("story tag validation") {
  CHECK_THROWS_AS(parse_feature("@story:\nFeature: x\n", "f.feature"), ParseError);
  CHECK_THROWS_AS(parse_feature("@story:A B\nFeature: x\n", "f.feature"), ParseError);
  try {
    parse_feature("@story:ASE-1\n@story:ASE-2\nFeature: x\n", "f.feature");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line() == 2);
    CHECK(err.message().find("at most one") != std::string::npos);
  }
}

TEST_CASE("structural feature errors") {
  SUBCASE("scenario without steps") {
    try {
      parse_feature("Feature: x\n  Scenario: empty\n  Scenario: next\n    Given a\n",
                    "f.feature");
      FAIL("expected ParseError");
    } catch (const ParseError& err) {
      CHECK(err.line() == 2);
      CHECK(err.message().find("has no steps") != std::string::npos);
    }
  }
  SUBCASE("scenario must start with Given or When") {
    try {
      parse_feature("Feature: x\n  Scenario: s\n    Then outcome\n", "f.feature");
      FAIL("expected ParseError");
    } catch (const ParseError& err) {
      CHECK(err.line() == 3);
      CHECK(err.message().find("Given or When") != std::string::npos);
    }
  }
  SUBCASE("step outside a scenario") {
    CHECK_THROWS_AS(parse_feature("Feature: x\n  Given a\n", "f.feature"), ParseError);
  }
  SUBCASE("scenario before feature") {
    CHECK_THROWS_AS(parse_feature("Scenario: s\n  Given a\n", "f.feature"), ParseError);
  }
  SUBCASE("two feature sections") {
    CHECK_THROWS_AS(parse_feature("Feature: a\nFeature: b\n", "f.feature"), ParseError);
  }
  SUBCASE("missing feature") {
    CHECK_THROWS_AS(parse_feature("", "f.feature"), ParseError);
    CHECK_THROWS_AS(parse_feature("# only a comment\n", "f.feature"), ParseError);
  }
  SUBCASE("empty feature name") {
    CHECK_THROWS_AS(parse_feature("Feature:\n", "f.feature"), ParseError);
  }
  SUBCASE("empty step text") {
    CHECK_THROWS_AS(parse_feature("Feature: x\n  Scenario: s\n    Given\n", "f.feature"),
                    ParseError);
  }
  SUBCASE("unrecognized line") {
    try {
      parse_feature("Feature: x\nsome stray prose\n", "f.feature");
      FAIL("expected ParseError");
    } catch (const ParseError& err) {
      CHECK(err.line() == 2);
      CHECK(err.message() == "unrecognized line");
    }
  }
}

TEST_CASE("step order is preserved") {
  const char* text =
      "Feature: order\n"
      "  Scenario: s\n"
      "    Given one\n"
      "    And two\n"
      "    When three\n"
      "    Then four\n"
      "    And five\n"
      "    But six\n";
  Feature feature = parse_feature(text, "o.feature");
  const auto& steps = feature.usage_scenarios[0].steps;
  REQUIRE(steps.size() == 6);
  CHECK(steps[0].text == "one");
  CHECK(steps[5].text == "six");
  CHECK(steps[5].keyword == StepKeyword::But);
}
