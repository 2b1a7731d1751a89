#include <doctest.h>

#include "scenval/backlog.hpp"
#include "scenval/util.hpp"

using namespace scenval;

TEST_CASE("parses the case-study backlog with no diagnostics") {
  std::string path = std::string(SCENVAL_FIXTURE_DIR) + "/case-study/backlog.json";
  ParsedBacklog parsed = parse_backlog(read_file(path), path);
  CHECK(parsed.diagnostics.empty());

  const Backlog& backlog = parsed.backlog;
  REQUIRE(backlog.goals.size() == 1);
  CHECK(backlog.goals[0].id == "G1");
  CHECK(backlog.goals[0].title == "Reduce pollution cased by inner-city delivery traffic");

  REQUIRE(backlog.epics.size() == 1);
  CHECK(backlog.epics[0].id == "ASE-22");
  CHECK(backlog.epics[0].goal_ids == std::vector<std::string>{"G1"});
  CHECK(backlog.epics[0].text.find("logistics service provider") != std::string::npos);

  REQUIRE(backlog.stories.size() == 2);
  CHECK(backlog.stories[0].id == "ASE-29");
  CHECK(backlog.stories[0].epic_id == "ASE-22");
  CHECK(backlog.stories[0].text.find("optimized routes") != std::string::npos);
  CHECK(backlog.stories[1].id == "ASE-31");
}

TEST_CASE("empty backlog") {
  ParsedBacklog parsed =
      parse_backlog(R"({"goals":[],"epics":[],"stories":[]})", "b.json");
  CHECK(parsed.backlog.goals.empty());
  CHECK(parsed.backlog.epics.empty());
  CHECK(parsed.backlog.stories.empty());
  CHECK(parsed.diagnostics.empty());
}

TEST_CASE("dangling references become diagnostics, not errors") {
  ParsedBacklog parsed = parse_backlog(
      R"({"goals":[],"epics":[],"stories":[{"id":"S1","epic":"ASE-99","text":"t"}]})",
      "b.json");
  REQUIRE(parsed.diagnostics.size() == 1);
  CHECK(parsed.diagnostics[0].severity == Severity::Warning);
  CHECK(parsed.diagnostics[0].message.find("ASE-99") != std::string::npos);
  CHECK(parsed.backlog.stories.size() == 1);

  ParsedBacklog epic_dangle = parse_backlog(
      R"({"goals":[],"epics":[{"id":"E1","text":"t","goals":["G9"]}],"stories":[]})",
      "b.json");
  REQUIRE(epic_dangle.diagnostics.size() == 1);
  CHECK(epic_dangle.diagnostics[0].message.find("G9") != std::string::npos);
}

TEST_CASE("malformed JSON carries a position") {
  try {
    parse_backlog("{\n  \"goals\": [,]\n}", "b.json");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line() == 2);
    CHECK(err.message().find("malformed JSON") != std::string::npos);
  }
}

TEST_CASE("missing required fields are fatal") {
  CHECK_THROWS_AS(parse_backlog(R"({"epics":[],"stories":[]})", "b.json"), ParseError);
  CHECK_THROWS_AS(
      parse_backlog(R"({"goals":[{"id":"G1"}],"epics":[],"stories":[]})", "b.json"),
      ParseError);
  CHECK_THROWS_AS(
      parse_backlog(R"({"goals":[],"epics":[{"id":"E1"}],"stories":[]})", "b.json"),
      ParseError);
  CHECK_THROWS_AS(
      parse_backlog(R"({"goals":[],"epics":[],"stories":[{"id":"S1","text":"t"}]})",
                    "b.json"),
      ParseError);
  CHECK_THROWS_AS(parse_backlog("[]", "b.json"), ParseError);
  CHECK_THROWS_AS(
      parse_backlog(R"({"goals":{},"epics":[],"stories":[]})", "b.json"), ParseError);
}

TEST_CASE("duplicate ids are reported and the first record wins") {
  ParsedBacklog parsed = parse_backlog(
      R"({"goals":[{"id":"G1","title":"a"},{"id":"G1","title":"b"}],
          "epics":[],"stories":[]})",
      "b.json");
  REQUIRE(parsed.backlog.goals.size() == 1);
  CHECK(parsed.backlog.goals[0].title == "a");
  REQUIRE(parsed.diagnostics.size() == 1);
  CHECK(parsed.diagnostics[0].severity == Severity::Error);
  CHECK(parsed.diagnostics[0].message.find("duplicate goal id") != std::string::npos);
}

TEST_CASE("unknown keys are ignored") {
  ParsedBacklog parsed = parse_backlog(
      R"({"goals":[{"id":"G1","title":"t","owner":"x"}],"epics":[],"stories":[],
          "version":3})",
      "b.json");
  CHECK(parsed.backlog.goals.size() == 1);
  CHECK(parsed.diagnostics.empty());
}

TEST_CASE("record order equals file order") {
  ParsedBacklog parsed = parse_backlog(
      R"({"goals":[{"id":"Z","title":"z"},{"id":"A","title":"a"}],
          "epics":[],"stories":[]})",
      "b.json");
  REQUIRE(parsed.backlog.goals.size() == 2);
  CHECK(parsed.backlog.goals[0].id == "Z");
  CHECK(parsed.backlog.goals[1].id == "A");
}
