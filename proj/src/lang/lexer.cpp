#include "logiciot/lang/lexer.hpp"

#include <charconv>
#include <unordered_map>

#include "logiciot/lang/diagnostics.hpp"

namespace logiciot::lang
{

namespace
{

const std::unordered_map<std::string_view, TokenKind> & word_table()
{
  static const std::unordered_map<std::string_view, TokenKind> table = {
    {"RELATION", TokenKind::KwRelation},
    {"TRIGGER", TokenKind::KwTrigger},
    {"ENDPOINT", TokenKind::KwEndpoint},
    {"TIMER", TokenKind::KwTimer},
    {"RULE", TokenKind::KwRule},
    {"MODULE", TokenKind::KwModule},
    {"MAP", TokenKind::KwMap},
    {"START", TokenKind::KwStart},
    {"STOP", TokenKind::KwStop},
    {"ACTIVATE", TokenKind::KwActivate},
    {"DEACTIVATE", TokenKind::KwDeactivate},
    {"CHECK", TokenKind::KwCheck},
    {"CALL", TokenKind::KwCall},
    {"ACALL", TokenKind::KwAcall},
    {"AND", TokenKind::KwAnd},
    {"OR", TokenKind::KwOr},
    {"NOT", TokenKind::KwNot},
    {"true", TokenKind::True},
    {"false", TokenKind::False},
    {"null", TokenKind::Null},
  };
  return table;
}

bool is_ident_start(char c) noexcept
{
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

bool is_ident_char(char c) noexcept { return is_ident_start(c) || is_digit(c); }

/// True when the previous token ends an operand, so a following `-` is the
/// binary operator rather than the sign of a literal.
bool ends_operand(const std::vector<Token> & out) noexcept
{
  if (out.empty()) return false;
  switch (out.back().kind) {
    case TokenKind::Identifier:
    case TokenKind::Number:
    case TokenKind::Text:
    case TokenKind::True:
    case TokenKind::False:
    case TokenKind::Null:
    case TokenKind::RParen:
    case TokenKind::RBracket:
      return true;
    default:
      return false;
  }
}

class Lexer
{
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run()
  {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        bump();
        continue;
      }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
        continue;
      }
      if (c == '\n') {
        const SourceLoc at = here();
        bump();
        map_line_ = false;
        if (nesting_ == 0) push(TokenKind::Newline, "\n", at);
        continue;
      }
      if (is_ident_start(c)) {
        lex_word();
        continue;
      }
      if (is_digit(c) || (c == '-' && peek_is_digit(1) && !ends_operand(out_))) {
        lex_number();
        continue;
      }
      if (c == '"') {
        lex_text();
        continue;
      }
      lex_punct();
    }
    return std::move(out_);
  }

private:
  SourceLoc here() const noexcept { return {line_, col_}; }

  void bump() noexcept
  {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool peek_is_digit(std::size_t ahead) const noexcept
  {
    return pos_ + ahead < src_.size() && is_digit(src_[pos_ + ahead]);
  }

  void push(TokenKind k, std::string text, SourceLoc at, double number = 0)
  {
    out_.push_back(Token{k, std::move(text), number, at});
  }

  [[noreturn]] void fail(SourceLoc at, std::string msg) const
  {
    throw ParseError(Diagnostic{DiagnosticKind::Lexical, at, std::move(msg), {}});
  }

  void lex_word()
  {
    const SourceLoc at = here();
    const std::size_t begin = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) bump();
    std::string word(src_.substr(begin, pos_ - begin));
    const auto & table = word_table();
    auto it = table.find(word);
    const TokenKind k = it == table.end() ? TokenKind::Identifier : it->second;
    if (k == TokenKind::KwMap) map_line_ = true;
    push(k, std::move(word), at);
  }

  void lex_number()
  {
    const SourceLoc at = here();
    const std::size_t begin = pos_;
    if (src_[pos_] == '-') bump();
    while (pos_ < src_.size() && is_digit(src_[pos_])) bump();
    if (pos_ < src_.size() && src_[pos_] == '.' && peek_is_digit(1)) {
      bump();
      while (pos_ < src_.size() && is_digit(src_[pos_])) bump();
    }
    const std::string_view spelling = src_.substr(begin, pos_ - begin);
    double value = 0;
    auto [ptr, ec] = std::from_chars(spelling.data(), spelling.data() + spelling.size(), value);
    if (ec != std::errc{} || ptr != spelling.data() + spelling.size()) {
      fail(at, "number out of range: " + std::string(spelling));
    }
    push(TokenKind::Number, std::string(spelling), at, value);
  }

  void lex_text()
  {
    const SourceLoc at = here();
    bump();  // opening quote
    std::string text;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        fail(at, "unterminated text literal");
      }
      const char c = src_[pos_];
      if (c == '"') {
        bump();
        break;
      }
      if (c == '\\') {
        const SourceLoc esc_at = here();
        bump();
        if (pos_ >= src_.size()) fail(at, "unterminated text literal");
        switch (src_[pos_]) {
          case '"':
            text.push_back('"');
            break;
          case '\\':
            text.push_back('\\');
            break;
          case 'n':
            text.push_back('\n');
            break;
          case 't':
            text.push_back('\t');
            break;
          case 'r':
            text.push_back('\r');
            break;
          default:
            fail(esc_at, std::string("unknown escape sequence '\\") + src_[pos_] + "'");
        }
        bump();
        continue;
      }
      text.push_back(c);
      bump();
    }
    push(TokenKind::Text, std::move(text), at);
  }

  void lex_uri()
  {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) bump();
    if (pos_ >= src_.size()) return;
    const char c = src_[pos_];
    if (c == '"' || c == '\n' || c == '\r' || c == ';' || c == '#') return;
    const SourceLoc at = here();
    const std::size_t begin = pos_;
    while (pos_ < src_.size()) {
      const char d = src_[pos_];
      if (d == ' ' || d == '\t' || d == '\r' || d == '\n' || d == ';' || d == '#') break;
      bump();
    }
    push(TokenKind::Uri, std::string(src_.substr(begin, pos_ - begin)), at);
  }

  void lex_punct()
  {
    const SourceLoc at = here();
    const char c = src_[pos_];
    const char next = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
    auto one = [&](TokenKind k) {
      bump();
      push(k, std::string(1, c), at);
    };
    auto two = [&](TokenKind k) {
      std::string s{c, next};
      bump();
      bump();
      push(k, std::move(s), at);
    };
    switch (c) {
      case '(':
        ++nesting_;
        return one(TokenKind::LParen);
      case ')':
        if (nesting_ > 0) --nesting_;
        return one(TokenKind::RParen);
      case '[':
        ++nesting_;
        return one(TokenKind::LBracket);
      case ']':
        if (nesting_ > 0) --nesting_;
        return one(TokenKind::RBracket);
      case '{':
        return one(TokenKind::LBrace);
      case '}':
        return one(TokenKind::RBrace);
      case ',':
        return one(TokenKind::Comma);
      case '.':
        return one(TokenKind::Dot);
      case ';':
        map_line_ = false;
        return one(TokenKind::Semicolon);
      case ':':
        one(TokenKind::Colon);
        if (map_line_) lex_uri();
        return;
      case '+':
        return one(TokenKind::Plus);
      case '-':
        return one(TokenKind::Minus);
      case '*':
        return one(TokenKind::Star);
      case '/':
        return one(TokenKind::Slash);
      case '<':
        return next == '=' ? two(TokenKind::LessEq) : one(TokenKind::Less);
      case '>':
        return next == '=' ? two(TokenKind::GreaterEq) : one(TokenKind::Greater);
      case '=':
        if (next == '=') return two(TokenKind::EqEq);
        break;
      case '!':
        if (next == '=') return two(TokenKind::NotEq);
        break;
      default:
        break;
    }
    std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f)
                          ? "byte 0x" + to_hex(static_cast<unsigned char>(c))
                          : std::string("'") + c + "'";
    fail(at, "illegal character " + shown);
  }

  static std::string to_hex(unsigned char b)
  {
    static constexpr char digits[] = "0123456789abcdef";
    return {digits[b >> 4], digits[b & 0xf]};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int nesting_ = 0;
  bool map_line_ = false;
  std::vector<Token> out_;
};

}  // namespace

bool is_keyword(TokenKind k) noexcept
{
  return k >= TokenKind::KwRelation && k <= TokenKind::KwNot;
}

std::string_view describe(TokenKind k) noexcept
{
  switch (k) {
    case TokenKind::KwRelation:
      return "RELATION";
    case TokenKind::KwTrigger:
      return "TRIGGER";
    case TokenKind::KwEndpoint:
      return "ENDPOINT";
    case TokenKind::KwTimer:
      return "TIMER";
    case TokenKind::KwRule:
      return "RULE";
    case TokenKind::KwModule:
      return "MODULE";
    case TokenKind::KwMap:
      return "MAP";
    case TokenKind::KwStart:
      return "START";
    case TokenKind::KwStop:
      return "STOP";
    case TokenKind::KwActivate:
      return "ACTIVATE";
    case TokenKind::KwDeactivate:
      return "DEACTIVATE";
    case TokenKind::KwCheck:
      return "CHECK";
    case TokenKind::KwCall:
      return "CALL";
    case TokenKind::KwAcall:
      return "ACALL";
    case TokenKind::KwAnd:
      return "AND";
    case TokenKind::KwOr:
      return "OR";
    case TokenKind::KwNot:
      return "NOT";
    case TokenKind::True:
      return "true";
    case TokenKind::False:
      return "false";
    case TokenKind::Null:
      return "null";
    case TokenKind::Identifier:
      return "identifier";
    case TokenKind::Number:
      return "number";
    case TokenKind::Text:
      return "text literal";
    case TokenKind::Uri:
      return "URI";
    case TokenKind::LParen:
      return "'('";
    case TokenKind::RParen:
      return "')'";
    case TokenKind::LBrace:
      return "'{'";
    case TokenKind::RBrace:
      return "'}'";
    case TokenKind::LBracket:
      return "'['";
    case TokenKind::RBracket:
      return "']'";
    case TokenKind::Comma:
      return "','";
    case TokenKind::Colon:
      return "':'";
    case TokenKind::Dot:
      return "'.'";
    case TokenKind::Semicolon:
      return "';'";
    case TokenKind::Plus:
      return "'+'";
    case TokenKind::Minus:
      return "'-'";
    case TokenKind::Star:
      return "'*'";
    case TokenKind::Slash:
      return "'/'";
    case TokenKind::Less:
      return "'<'";
    case TokenKind::LessEq:
      return "'<='";
    case TokenKind::Greater:
      return "'>'";
    case TokenKind::GreaterEq:
      return "'>='";
    case TokenKind::EqEq:
      return "'=='";
    case TokenKind::NotEq:
      return "'!='";
    case TokenKind::Newline:
      return "newline";
    case TokenKind::Eof:
      return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace logiciot::lang
