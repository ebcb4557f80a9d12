#include <doctest.h>

#include "logiciot/lang/format.hpp"
#include "logiciot/lang/parser.hpp"
#include "random_program.hpp"
#include "snippets.hpp"

using namespace logiciot;
using namespace logiciot::lang;

TEST_CASE("single relation formats to one line")
{
  Program p;
  p.relations.push_back(RelationDecl{"R", {"MAC", "RSSI"}, {}});
  CHECK(format_program(p) == "RELATION R (MAC, RSSI)\n");
}

TEST_CASE("reference listings round-trip")
{
  for (const auto & src : {testing::composite_program(), testing::seven_snippets()}) {
    const auto p = parse_program(src);
    const auto text = format_program(p);
    CHECK(parse_program(text) == p);
    CHECK(format_program(parse_program(text)) == text);
  }
}

TEST_CASE("random programs round-trip")
{
  std::mt19937_64 rng(20240601);
  testing::ProgramShape shape;
  shape.surface_features = true;
  for (int i = 0; i < 1000; ++i) {
    Program p = testing::random_program(rng, shape);
    Program checked = p;
    REQUIRE_NOTHROW(resolve_and_validate(checked));
    REQUIRE(checked == p);
    const auto text = format_program(p);
    Program back;
    try {
      back = parse_program(text);
    } catch (const ParseError & e) {
      FAIL(e.diagnostic().render("<formatted>") << "\n" << text);
    }
    if (!(back == p)) FAIL("round-trip mismatch for\n" << text);
  }
}

TEST_CASE("expression formatting keeps structure")
{
  const char * cases[] = {
    "1 - (2 - 3)",      "(1 - 2) - 3",          "-(-1)",           "NOT NOT a",   "(a OR b) AND c",
    "a OR b AND c",     "-(1 + 2) * 3",         "R.X[-2] / (1 * 2)", "(a < b) == c", "a == (b < c)",
    "\"q\\\"\" != 1.5", "-x < -1",              "NOT (a AND b)",
  };
  for (const char * c : cases) {
    const auto e = parse_expression(c);
    CHECK_MESSAGE(parse_expression(format_expression(e)) == e, c << " -> " << format_expression(e));
  }
}

TEST_CASE("text quoting")
{
  CHECK(quote_text("a\"b\\c\n") == R"("a\"b\\c\n")");
}
