#include "gstf/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

namespace gstf {

namespace {

using TK = ExprToken::Kind;

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool ends_operand(const std::vector<ExprToken>& toks) {
  if (toks.empty()) return false;
  const TK k = toks.back().kind;
  return k == TK::Number || k == TK::RParen || k == TK::Identifier;
}

// Scans [-]digits[.digits][(e|E)[+-]digits] starting at pos.
std::size_t scan_number(std::string_view text, std::size_t pos) {
  std::size_t i = pos;
  if (text[i] == '-') ++i;
  std::size_t mantissa_digits = 0;
  while (i < text.size() && is_digit(text[i])) ++i, ++mantissa_digits;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && is_digit(text[i])) ++i, ++mantissa_digits;
  }
  if (mantissa_digits == 0) throw Error(ErrorKind::LexicalError, "malformed number", pos);
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    const std::size_t e = i++;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < text.size() && is_digit(text[i])) ++i, ++exp_digits;
    if (exp_digits == 0) throw Error(ErrorKind::LexicalError, "exponent without digits", e);
  }
  return i;
}

struct Arity {
  std::size_t min;
  std::size_t max;
};

std::optional<Arity> arity_of(std::string_view name) {
  if (name == "gaussian" || name == "hermite" || name == "poly") return Arity{1, 1};
  if (name == "bump") return Arity{0, 1};
  if (name == "subexp" || name == "translate" || name == "modulate" || name == "scale") return Arity{2, 2};
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::vector<ExprToken> toks, std::size_t length) : toks_(std::move(toks)), length_(length) {}

  FunctionSpec parse() {
    FunctionSpec e = expr();
    const ExprToken& t = peek();
    if (t.kind == TK::RParen) throw Error(ErrorKind::UnbalancedParen, "unmatched ')'", t.offset);
    if (t.kind != TK::End) throw Error(ErrorKind::SyntaxError, "unexpected '" + t.text + "'", t.offset);
    return e;
  }

 private:
  const ExprToken& peek() const { return toks_[pos_]; }
  const ExprToken& take() { return toks_[pos_++]; }

  FunctionSpec expr() {
    FunctionSpec lhs = term();
    while (peek().kind == TK::Plus || peek().kind == TK::Minus) {
      const bool plus = take().kind == TK::Plus;
      FunctionSpec rhs = term();
      lhs = plus ? FunctionSpec::sum(std::move(lhs), std::move(rhs))
                 : FunctionSpec::difference(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  FunctionSpec term() {
    FunctionSpec lhs = factor();
    while (peek().kind == TK::Star) {
      take();
      lhs = FunctionSpec::product(std::move(lhs), factor());
    }
    return lhs;
  }

  FunctionSpec factor() {
    const ExprToken& t = peek();
    switch (t.kind) {
      case TK::Number: return FunctionSpec::constant(take().number);
      case TK::Identifier: return call();
      case TK::LParen: {
        const std::size_t open = take().offset;
        ++depth_;
        FunctionSpec inner = expr();
        close_paren(open);
        return inner;
      }
      case TK::End:
        if (depth_ > 0) throw Error(ErrorKind::UnbalancedParen, "expression ends inside parentheses", length_);
        throw Error(ErrorKind::SyntaxError, "unexpected end of expression", t.offset);
      case TK::RParen: throw Error(ErrorKind::UnbalancedParen, "unmatched ')'", t.offset);
      default: throw Error(ErrorKind::SyntaxError, "unexpected '" + t.text + "'", t.offset);
    }
  }

  void close_paren(std::size_t open) {
    const ExprToken& t = peek();
    if (t.kind == TK::RParen) {
      take();
      --depth_;
      return;
    }
    if (t.kind == TK::End) throw Error(ErrorKind::UnbalancedParen, "'(' at offset " + std::to_string(open) + " is never closed", length_);
    throw Error(ErrorKind::SyntaxError, "expected ')' but found '" + t.text + "'", t.offset);
  }

  FunctionSpec call() {
    const ExprToken id = take();
    const auto arity = arity_of(id.text);
    if (!arity) throw Error(ErrorKind::UnknownIdentifier, "unknown identifier '" + id.text + "'", id.offset);
    if (peek().kind != TK::LParen) {
      if (peek().kind == TK::End) throw Error(ErrorKind::SyntaxError, "expected '(' after '" + id.text + "'", length_);
      throw Error(ErrorKind::SyntaxError, "expected '(' after '" + id.text + "'", peek().offset);
    }
    const std::size_t open = take().offset;
    ++depth_;

    std::vector<FunctionSpec> args;
    std::vector<std::size_t> arg_offsets;
    if (peek().kind != TK::RParen) {
      for (;;) {
        arg_offsets.push_back(peek().offset);
        args.push_back(expr());
        if (peek().kind != TK::Comma) break;
        take();
      }
    }
    close_paren(open);

    if (args.size() < arity->min || args.size() > arity->max) {
      throw Error(ErrorKind::ArityMismatch,
                  "'" + id.text + "' takes " + std::to_string(arity->min) +
                      (arity->max != arity->min ? "-" + std::to_string(arity->max) : std::string()) +
                      " argument(s), got " + std::to_string(args.size()),
                  id.offset);
    }
    auto number = [&](std::size_t i) {
      if (args[i].kind != FunctionSpec::Kind::Constant)
        throw Error(ErrorKind::SyntaxError, "argument " + std::to_string(i + 1) + " of '" + id.text + "' must be a number",
                    arg_offsets[i]);
      return args[i].params[0];
    };
    auto integer = [&](std::size_t i) {
      const double v = number(i);
      if (v < 0.0 || v != std::floor(v) || v > 1e6)
        throw Error(ErrorKind::DomainError, "argument of '" + id.text + "' must be a non-negative integer", arg_offsets[i]);
      return static_cast<int>(v);
    };

    FunctionSpec out;
    const std::string& n = id.text;
    if (n == "gaussian") out = FunctionSpec::gaussian(number(0));
    else if (n == "hermite") out = FunctionSpec::hermite(integer(0));
    else if (n == "poly") out = FunctionSpec::poly(integer(0));
    else if (n == "bump") out = args.empty() ? FunctionSpec::bump() : FunctionSpec::bump(integer(0));
    else if (n == "subexp") out = FunctionSpec::subexp(number(0), number(1));
    else if (n == "translate") out = FunctionSpec::translate(args[0], number(1));
    else if (n == "modulate") out = FunctionSpec::modulate(args[0], number(1));
    else out = FunctionSpec::scale(args[0], number(1));

    try {
      validate(out);
    } catch (const Error& e) {
      throw Error(e.kind(), e.what(), id.offset);
    }
    return out;
  }

  std::vector<ExprToken> toks_;
  std::size_t length_;
  std::size_t pos_ = 0;
  // Currently open parentheses.
  int depth_ = 0;
};

}  // namespace

std::vector<ExprToken> tokenize(std::string_view text) {
  std::vector<ExprToken> toks;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const bool signed_number =
        c == '-' && !ends_operand(toks) && i + 1 < text.size() && (is_digit(text[i + 1]) || text[i + 1] == '.');
    if (is_digit(c) || c == '.' || signed_number) {
      const std::size_t end = scan_number(text, i);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + end, v);
      if (ec != std::errc() || ptr != text.data() + end || !std::isfinite(v))
        throw Error(ErrorKind::LexicalError, "number out of range", i);
      toks.push_back({TK::Number, std::string(text.substr(i, end - i)), v, i});
      i = end;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t end = i;
      while (end < text.size() && is_ident_char(text[end])) ++end;
      toks.push_back({TK::Identifier, std::string(text.substr(i, end - i)), 0.0, i});
      i = end;
      continue;
    }
    TK kind;
    switch (c) {
      case '(': kind = TK::LParen; break;
      case ')': kind = TK::RParen; break;
      case ',': kind = TK::Comma; break;
      case '+': kind = TK::Plus; break;
      case '-': kind = TK::Minus; break;
      case '*': kind = TK::Star; break;
      default: throw Error(ErrorKind::LexicalError, std::string("unexpected character '") + c + "'", i);
    }
    toks.push_back({kind, std::string(1, c), 0.0, i});
    ++i;
  }
  toks.push_back({TK::End, "", 0.0, text.size()});
  return toks;
}

FunctionSpec parse_function_expr(std::string_view text) {
  if (text.size() > kMaxExprLength)
    throw Error(ErrorKind::InvalidArgument, "expression longer than " + std::to_string(kMaxExprLength) + " bytes");
  auto toks = tokenize(text);
  if (toks.size() == 1) throw Error(ErrorKind::InvalidArgument, "empty expression", 0);
  return Parser(std::move(toks), text.size()).parse();
}

}  // namespace gstf
