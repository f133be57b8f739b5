#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gstf/types.hpp"

namespace gstf {

/// Expression tree over the analytic test-function catalog.
///
///   constant(c)          c
///   gaussian(a)          exp(-a x^2 / 2), a > 0
///   hermite(k)           H_k(x) exp(-x^2 / 2), physicists' H_k
///   bump() / bump(k)     exp(-(1 - x^2)^-k) on |x| < 1, else 0 (k = 1 by default)
///   subexp(s, r)         exp(-r |x|^(1/s)), s > 0
///   poly(k)              x^k
///   translate(f, x0)     f(x - x0)
///   modulate(f, xi0)     exp(i xi0 x) f(x)
///   scale(f, c)          f(x / c), c != 0
///   f + g, f - g, f * g
struct FunctionSpec {
  enum class Kind { Constant, Gaussian, Hermite, Bump, Subexp, Poly, Translate, Modulate, Scale, Sum, Difference, Product };

  Kind kind = Kind::Constant;
  std::vector<double> params;
  std::vector<FunctionSpec> children;
  /// bump() and bump(1) evaluate identically but print differently.
  bool explicit_order = false;

  static FunctionSpec constant(double c);
  static FunctionSpec gaussian(double a);
  static FunctionSpec hermite(int k);
  static FunctionSpec bump();
  static FunctionSpec bump(int k);
  static FunctionSpec subexp(double s, double r);
  static FunctionSpec poly(int k);
  static FunctionSpec translate(FunctionSpec f, double x0);
  static FunctionSpec modulate(FunctionSpec f, double xi0);
  static FunctionSpec scale(FunctionSpec f, double c);
  static FunctionSpec sum(FunctionSpec a, FunctionSpec b);
  static FunctionSpec difference(FunctionSpec a, FunctionSpec b);
  static FunctionSpec product(FunctionSpec a, FunctionSpec b);

  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

std::string_view to_string(FunctionSpec::Kind kind);

/// Throws MalformedSpec / DomainError if arities or parameter domains are violated.
void validate(const FunctionSpec& spec);

/// Pointwise value at x. The spec must be valid.
cplx evaluate(const FunctionSpec& spec, double x);

SampledFunction catalog_eval(const FunctionSpec& spec, const Grid1D& grid);

/// Canonical text form; parse_function_expr(pretty_print(s)) == s.
std::string pretty_print(const FunctionSpec& spec);

/// H_k(x) by the three-term recurrence.
double hermite_polynomial(int k, double x);

}  // namespace gstf
