#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gstf/catalog.hpp"

namespace gstf {

inline constexpr std::size_t kMaxExprLength = 4096;

struct ExprToken {
  enum class Kind { Identifier, Number, LParen, RParen, Comma, Plus, Minus, Star, End };
  Kind kind = Kind::End;
  std::string text;
  double number = 0.0;
  std::size_t offset = 0;
};

/// A '-' directly followed by a digit or '.' is part of the number unless the
/// previous token ends an operand, so "a*-2" and "a - -2" lex as signed literals.
/// Throws LexicalError with the byte offset of the offending character.
std::vector<ExprToken> tokenize(std::string_view text);

/// Grammar (standard precedence, left-associative):
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := number | call | '(' expr ')'
///   call   := ident '(' (arg (',' arg)*)? ')'
/// Numeric parameter slots take a single (signed) literal.
/// Errors: LexicalError, UnknownIdentifier, ArityMismatch, UnbalancedParen,
/// SyntaxError, each with a byte offset; DomainError for out-of-domain
/// parameters; InvalidArgument for empty or over-long input.
FunctionSpec parse_function_expr(std::string_view text);

}  // namespace gstf
