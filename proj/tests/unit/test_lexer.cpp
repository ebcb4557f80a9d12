#include <doctest.h>

#include "logiciot/lang/diagnostics.hpp"
#include "logiciot/lang/lexer.hpp"

using namespace logiciot::lang;

namespace
{

std::vector<TokenKind> kinds(std::string_view src)
{
  std::vector<TokenKind> out;
  for (const auto & t : tokenize(src)) out.push_back(t.kind);
  return out;
}

Token tok(TokenKind k, std::string text = {}, double number = 0) { return Token{k, std::move(text), number, {}}; }

}  // namespace

TEST_CASE("relation declaration tokens")
{
  const std::vector<Token> expected = {
    tok(TokenKind::KwRelation, "RELATION"), tok(TokenKind::Identifier, "R"), tok(TokenKind::LParen, "("),
    tok(TokenKind::Identifier, "MAC"),      tok(TokenKind::Comma, ","),      tok(TokenKind::Identifier, "RSSI"),
    tok(TokenKind::RParen, ")"),
  };
  CHECK(tokenize("RELATION R (MAC, RSSI)") == expected);
}

TEST_CASE("empty input")
{
  CHECK(tokenize("").empty());
  CHECK(tokenize("   # only a comment").empty());
}

TEST_CASE("negative literals inside history offsets and comparisons")
{
  const auto toks = tokenize("R.RSSI[-1] < -60");
  REQUIRE(toks.size() == 8);
  CHECK(toks[0] == tok(TokenKind::Identifier, "R"));
  CHECK(toks[1].kind == TokenKind::Dot);
  CHECK(toks[2] == tok(TokenKind::Identifier, "RSSI"));
  CHECK(toks[3].kind == TokenKind::LBracket);
  CHECK(toks[4].kind == TokenKind::Number);
  CHECK(toks[4].number == -1);
  CHECK(toks[5].kind == TokenKind::RBracket);
  CHECK(toks[6].kind == TokenKind::Less);
  CHECK(toks[7].kind == TokenKind::Number);
  CHECK(toks[7].number == -60);
}

TEST_CASE("minus after an operand is subtraction")
{
  CHECK(kinds("a -1") == std::vector{TokenKind::Identifier, TokenKind::Minus, TokenKind::Number});
  CHECK(kinds("a-1") == std::vector{TokenKind::Identifier, TokenKind::Minus, TokenKind::Number});
  CHECK(kinds(")-1") == std::vector{TokenKind::RParen, TokenKind::Minus, TokenKind::Number});
  CHECK(kinds("(-1") == std::vector{TokenKind::LParen, TokenKind::Number});
  CHECK(kinds("- x") == std::vector{TokenKind::Minus, TokenKind::Identifier});
}

TEST_CASE("keywords are case-sensitive")
{
  CHECK(kinds("RULE rule Rule") == std::vector{TokenKind::KwRule, TokenKind::Identifier, TokenKind::Identifier});
  CHECK(kinds("true false null") == std::vector{TokenKind::True, TokenKind::False, TokenKind::Null});
}

TEST_CASE("text escapes")
{
  const auto toks = tokenize(R"("a\"b\\c\nd\te\r")");
  REQUIRE(toks.size() == 1);
  CHECK(toks[0].kind == TokenKind::Text);
  CHECK(toks[0].text == "a\"b\\c\nd\te\r");
}

TEST_CASE("decimal numbers")
{
  const auto toks = tokenize("2.5, -0.25, 10");
  REQUIRE(toks.size() == 5);
  CHECK(toks[0].number == 2.5);
  CHECK(toks[2].number == -0.25);
  CHECK(toks[4].number == 10);
  CHECK(kinds("2.5 -0.25") == std::vector{TokenKind::Number, TokenKind::Minus, TokenKind::Number});
}

TEST_CASE("newlines are suppressed inside parentheses and brackets")
{
  CHECK(kinds("(a,\nb)\n") == std::vector{TokenKind::LParen, TokenKind::Identifier, TokenKind::Comma,
                                          TokenKind::Identifier, TokenKind::RParen, TokenKind::Newline});
}

TEST_CASE("MAP targets lex as raw URIs")
{
  const auto toks = tokenize("MAP RELATION R : module1.jsp");
  REQUIRE(toks.size() == 5);
  CHECK(toks[4] == tok(TokenKind::Uri, "module1.jsp"));
  const auto quoted = tokenize("MAP MODULE M : \"http://h/x y\"");
  REQUIRE(quoted.size() == 5);
  CHECK(quoted[4] == tok(TokenKind::Text, "http://h/x y"));
}

TEST_CASE("lexical errors carry positions")
{
  auto expect_error = [](std::string_view src, int line, int column) {
    try {
      tokenize(src);
      FAIL("no error for " << src);
    } catch (const ParseError & e) {
      CHECK(e.diagnostic().kind == DiagnosticKind::Lexical);
      CHECK(e.diagnostic().loc.line == line);
      CHECK(e.diagnostic().loc.column == column);
    }
  };
  expect_error("RELATION R (A)\n\"never closed", 2, 1);
  expect_error("x = 1", 1, 3);
  expect_error("  @", 1, 3);
  expect_error(R"("bad \q escape")", 1, 6);
}
