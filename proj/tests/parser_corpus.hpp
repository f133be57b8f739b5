#pragma once

// Expression corpus shared by the parser tests and the acceptance run.

#include <cstddef>
#include <string>
#include <vector>

#include "gstf/catalog.hpp"
#include "gstf/types.hpp"

namespace corpus {

using gstf::ErrorKind;
using FS = gstf::FunctionSpec;

struct Valid {
  std::string text;
  FS expected;
};

struct Invalid {
  std::string text;
  ErrorKind kind;
  std::size_t offset;
};

inline std::vector<Valid> valid() {
  const FS g1 = FS::gaussian(1.0);
  return {
      {"gaussian(1.0)", g1},
      {"gaussian(2)", FS::gaussian(2.0)},
      {"hermite(3)", FS::hermite(3)},
      {"bump()", FS::bump()},
      {"bump(2)", FS::bump(2)},
      {"subexp(0.5, 2)", FS::subexp(0.5, 2.0)},
      {"subexp(2, 1)", FS::subexp(2.0, 1.0)},
      {"poly(2)", FS::poly(2)},
      {"poly(0)", FS::poly(0)},
      {"translate(gaussian(1), 0.5)", FS::translate(g1, 0.5)},
      {"translate(gaussian(1),0.5)", FS::translate(g1, 0.5)},
      {"modulate(gaussian(1), -2)", FS::modulate(g1, -2.0)},
      {"scale(hermite(1), 2)", FS::scale(FS::hermite(1), 2.0)},
      {"hermite(3)*gaussian(2) + 0.5*bump()",
       FS::sum(FS::product(FS::hermite(3), FS::gaussian(2.0)), FS::product(FS::constant(0.5), FS::bump()))},
      {"gaussian(1) - hermite(1)", FS::difference(g1, FS::hermite(1))},
      {"gaussian(1)-hermite(1)", FS::difference(g1, FS::hermite(1))},
      {"1 - 2 - 3", FS::difference(FS::difference(FS::constant(1.0), FS::constant(2.0)), FS::constant(3.0))},
      {"1-2", FS::difference(FS::constant(1.0), FS::constant(2.0))},
      {"1 + -2", FS::sum(FS::constant(1.0), FS::constant(-2.0))},
      {"-1.5*gaussian(1)", FS::product(FS::constant(-1.5), g1)},
      {"2*3*gaussian(1)", FS::product(FS::product(FS::constant(2.0), FS::constant(3.0)), g1)},
      {"(gaussian(1) + hermite(2))*0.5", FS::product(FS::sum(g1, FS::hermite(2)), FS::constant(0.5))},
      {"gaussian(1) + hermite(2)*0.5", FS::sum(g1, FS::product(FS::hermite(2), FS::constant(0.5)))},
      {"gaussian(1)*(hermite(1) - hermite(2))", FS::product(g1, FS::difference(FS::hermite(1), FS::hermite(2)))},
      {"((gaussian(1)))", g1},
      {"  gaussian( 1 )  ", g1},
      {"gaussian(1)\t+\nbump()", FS::sum(g1, FS::bump())},
      {"gaussian(1e-1)", FS::gaussian(0.1)},
      {"gaussian(2.5E+1)", FS::gaussian(25.0)},
      {"gaussian(.5)", FS::gaussian(0.5)},
      {"translate(modulate(gaussian(1), 1), -0.5)", FS::translate(FS::modulate(g1, 1.0), -0.5)},
      {"scale(gaussian(1) + bump(), 2)", FS::scale(FS::sum(g1, FS::bump()), 2.0)},
      {"0.25", FS::constant(0.25)},
      {"hermite(0)*poly(2)", FS::product(FS::hermite(0), FS::poly(2))},
      {"gaussian(1) - (hermite(1) - hermite(2))", FS::difference(g1, FS::difference(FS::hermite(1), FS::hermite(2)))},
  };
}

inline std::vector<Invalid> invalid() {
  return {
      {"gaussian(", ErrorKind::UnbalancedParen, 9},
      {"gaussian(1", ErrorKind::UnbalancedParen, 10},
      {"gaussian(1))", ErrorKind::UnbalancedParen, 11},
      {"(gaussian(1)", ErrorKind::UnbalancedParen, 12},
      {")", ErrorKind::UnbalancedParen, 0},
      {"gauss(1)", ErrorKind::UnknownIdentifier, 0},
      {"1 + foo(2)", ErrorKind::UnknownIdentifier, 4},
      {"gaussian(1, 2)", ErrorKind::ArityMismatch, 0},
      {"hermite()", ErrorKind::ArityMismatch, 0},
      {"subexp(1)", ErrorKind::ArityMismatch, 0},
      {"2*bump(1, 2)", ErrorKind::ArityMismatch, 2},
      {"translate(gaussian(1))", ErrorKind::ArityMismatch, 0},
      {"gaussian(1) $ 2", ErrorKind::LexicalError, 12},
      {"gaussian(1e)", ErrorKind::LexicalError, 10},
      {"gaussian(1)#", ErrorKind::LexicalError, 11},
      {"gaussian(1) +", ErrorKind::SyntaxError, 13},
      {"hermite(2)*", ErrorKind::SyntaxError, 11},
      {"-", ErrorKind::SyntaxError, 0},
      {"gaussian 1", ErrorKind::SyntaxError, 9},
      {"gaussian(hermite(1))", ErrorKind::SyntaxError, 9},
      {"gaussian(-1)", ErrorKind::DomainError, 0},
      {"hermite(1.5)", ErrorKind::DomainError, 8},
      {"1 + scale(gaussian(1), 0)", ErrorKind::DomainError, 4},
  };
}

}  // namespace corpus
