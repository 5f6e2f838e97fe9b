#include <charconv>
#include <stdexcept>

#include "odd/expression.hpp"
#include "odd/parser.hpp"

namespace odd {

namespace {

enum class Tok {
  end,
  number_int,
  number_real,
  string,
  req_ref,
  kw_if,
  kw_then,
  kw_else,
  kw_and,
  kw_or,
  kw_not,
  kw_true,
  kw_false,
  op,  // comparison operator, see `cmp`
  lparen,
  rparen,
};

struct Token {
  Tok kind = Tok::end;
  SourceLocation at;
  std::string text;
  std::int64_t int_value = 0;
  double real_value = 0.0;
  CompareOp cmp = CompareOp::eq;
};

struct SyntaxError {
  SourceLocation at;
  std::string message;
};

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_space();
      Token token;
      token.at = here();
      if (pos_ >= src_.size()) {
        tokens.push_back(token);
        return tokens;
      }
      lex_one(token);
      tokens.push_back(std::move(token));
    }
  }

 private:
  SourceLocation here() const { return {line_, column_}; }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r')) {
      advance();
    }
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident(char c) { return is_ident_start(c) || is_digit(c); }

  void lex_one(Token& token) {
    const char c = peek();
    if (is_digit(c) || (c == '-' && (is_digit(peek(1)) || peek(1) == '.')) ||
        (c == '.' && is_digit(peek(1)))) {
      lex_number(token);
    } else if (c == '"') {
      lex_string(token);
    } else if (is_ident_start(c)) {
      lex_word(token);
    } else {
      lex_symbol(token);
    }
  }

  void lex_number(Token& token) {
    const auto start = pos_;
    bool real = false;
    if (peek() == '-') advance();
    while (is_digit(peek())) advance();
    if (peek() == '.') {
      real = true;
      advance();
      while (is_digit(peek())) advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      real = true;
      advance();
      if (peek() == '+' || peek() == '-') advance();
      if (!is_digit(peek())) throw SyntaxError{here(), "malformed exponent"};
      while (is_digit(peek())) advance();
    }
    if (is_ident(peek())) throw SyntaxError{here(), "unexpected character after number"};
    token.text = std::string(src_.substr(start, pos_ - start));
    std::string_view text = token.text;
    // from_chars does not accept a leading '+'; a leading '.' needs a zero.
    std::string buffer;
    if (text.find('.') == 0 || text.starts_with("-.")) {
      buffer = text.starts_with("-") ? "-0" + std::string(text.substr(1)) : "0" + token.text;
      text = buffer;
    }
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (real) {
      token.kind = Tok::number_real;
      auto [ptr, ec] = std::from_chars(first, last, token.real_value);
      if (ec != std::errc{} || ptr != last) {
        throw SyntaxError{token.at, "real literal out of range: " + token.text};
      }
    } else {
      token.kind = Tok::number_int;
      auto [ptr, ec] = std::from_chars(first, last, token.int_value);
      if (ec != std::errc{} || ptr != last) {
        throw SyntaxError{token.at, "integer literal out of range: " + token.text};
      }
    }
  }

  void lex_string(Token& token) {
    token.kind = Tok::string;
    advance();
    while (true) {
      if (pos_ >= src_.size()) throw SyntaxError{token.at, "unterminated string literal"};
      const char c = peek();
      if (c == '"') {
        advance();
        return;
      }
      if (c == '\\') {
        advance();
        const char e = peek();
        switch (e) {
          case '"': token.text += '"'; break;
          case '\\': token.text += '\\'; break;
          case 'n': token.text += '\n'; break;
          case 't': token.text += '\t'; break;
          default: throw SyntaxError{here(), "unknown escape sequence"};
        }
        advance();
        continue;
      }
      token.text += c;
      advance();
    }
  }

  void lex_word(Token& token) {
    const auto start = pos_;
    while (is_ident(peek())) advance();
    token.text = std::string(src_.substr(start, pos_ - start));
    if (token.text == "req" && peek() == ':') {
      advance();
      const auto path_start = pos_;
      const auto path_at = here();
      while (is_ident(peek()) || peek() == '/') advance();
      const auto text = src_.substr(path_start, pos_ - path_start);
      auto path = Path::parse(text);
      if (!path) {
        throw SyntaxError{path_at, "malformed requirement path '" + std::string(text) + "'"};
      }
      token.kind = Tok::req_ref;
      token.text = path->str();
      return;
    }
    static const std::pair<std::string_view, Tok> keywords[] = {
        {"if", Tok::kw_if},     {"then", Tok::kw_then}, {"else", Tok::kw_else},
        {"and", Tok::kw_and},   {"or", Tok::kw_or},     {"not", Tok::kw_not},
        {"true", Tok::kw_true}, {"false", Tok::kw_false},
    };
    for (const auto& [word, kind] : keywords) {
      if (token.text == word) {
        token.kind = kind;
        return;
      }
    }
    throw SyntaxError{token.at, "unknown identifier '" + token.text + "'"};
  }

  void lex_symbol(Token& token) {
    const char c = peek();
    const char n = peek(1);
    auto take = [&](Tok kind, int length) {
      token.kind = kind;
      for (int i = 0; i < length; ++i) {
        token.text += peek();
        advance();
      }
    };
    auto take_op = [&](CompareOp op, int length) {
      token.cmp = op;
      take(Tok::op, length);
    };
    if (c == '<' && n == '=') return take_op(CompareOp::le, 2);
    if (c == '>' && n == '=') return take_op(CompareOp::ge, 2);
    if (c == '=' && n == '=') return take_op(CompareOp::eq, 2);
    if (c == '!' && n == '=') return take_op(CompareOp::ne, 2);
    if (c == '<') return take_op(CompareOp::lt, 1);
    if (c == '>') return take_op(CompareOp::gt, 1);
    if (c == '&' && n == '&') return take(Tok::kw_and, 2);
    if (c == '|' && n == '|') return take(Tok::kw_or, 2);
    if (c == '!') return take(Tok::kw_not, 1);
    if (c == '(') return take(Tok::lparen, 1);
    if (c == ')') return take(Tok::rparen, 1);
    if (c == '=') throw SyntaxError{here(), "unexpected '='; use '==' for equality"};
    throw SyntaxError{here(), std::string("unexpected character '") + c + "'"};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr parse_all() {
    auto result = parse_expr();
    if (current().kind != Tok::end) fail("unexpected '" + current().text + "' after expression");
    return result;
  }

 private:
  const Token& current() const { return tokens_[index_]; }
  bool at(Tok kind) const { return current().kind == kind; }
  Token take() { return tokens_[index_ < tokens_.size() - 1 ? index_++ : index_]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError{current().at, message};
  }

  void expect(Tok kind, std::string_view what) {
    if (!at(kind)) {
      fail("expected " + std::string(what) +
           (at(Tok::end) ? " before end of input" : " near '" + current().text + "'"));
    }
    take();
  }

  ExprPtr parse_expr() {
    if (at(Tok::kw_if)) {
      take();
      auto condition = parse_or();
      expect(Tok::kw_then, "'then'");
      auto then_branch = parse_expr();
      expect(Tok::kw_else, "'else'");
      auto else_branch = parse_expr();
      return expr::if_then_else(std::move(condition), std::move(then_branch),
                                std::move(else_branch));
    }
    return parse_or();
  }

  ExprPtr parse_or() {
    std::vector<ExprPtr> operands{parse_and()};
    while (at(Tok::kw_or)) {
      take();
      operands.push_back(parse_and());
    }
    return operands.size() == 1 ? operands.front() : expr::any_of(std::move(operands));
  }

  ExprPtr parse_and() {
    std::vector<ExprPtr> operands{parse_comparison()};
    while (at(Tok::kw_and)) {
      take();
      operands.push_back(parse_comparison());
    }
    return operands.size() == 1 ? operands.front() : expr::all_of(std::move(operands));
  }

  ExprPtr parse_comparison() {
    auto left = parse_unary();
    if (!at(Tok::op)) return left;
    const auto op = take().cmp;
    auto right = parse_unary();
    if (at(Tok::op)) fail("comparisons cannot be chained; use 'and'");
    return expr::compare(op, std::move(left), std::move(right));
  }

  ExprPtr parse_unary() {
    if (at(Tok::kw_not)) {
      take();
      return expr::negate(parse_unary());
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    switch (current().kind) {
      case Tok::number_int: return expr::literal(take().int_value);
      case Tok::number_real: return expr::literal(take().real_value);
      case Tok::string: return expr::literal(take().text);
      case Tok::kw_true: take(); return expr::literal(true);
      case Tok::kw_false: take(); return expr::literal(false);
      case Tok::req_ref: return expr::req(*Path::parse(take().text));
      case Tok::lparen: {
        take();
        auto inner = parse_expr();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::kw_if: fail("a nested conditional must be parenthesized");
      case Tok::end: fail("unexpected end of expression");
      default: fail("unexpected '" + current().text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace

ParseResult<Expression> parse_expression(std::string_view source) {
  ParseResult<Expression> result;
  try {
    Parser parser(Lexer(source).run());
    result.value = Expression{parser.parse_all()};
  } catch (const SyntaxError& error) {
    result.diagnostics.push_back({Severity::error, error.at, error.message});
  }
  return result;
}

}  // namespace odd
