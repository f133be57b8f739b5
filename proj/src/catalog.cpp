#include "gstf/catalog.hpp"

#include <cmath>
#include <cstdio>

namespace gstf {

namespace {

constexpr int kMaxHermite = 64;
constexpr int kMaxPoly = 64;
constexpr int kMaxBumpOrder = 16;

using Kind = FunctionSpec::Kind;

FunctionSpec leaf(Kind kind, std::vector<double> params) {
  FunctionSpec s;
  s.kind = kind;
  s.params = std::move(params);
  return s;
}

FunctionSpec unary(Kind kind, FunctionSpec child, double param) {
  FunctionSpec s;
  s.kind = kind;
  s.params = {param};
  s.children.push_back(std::move(child));
  return s;
}

FunctionSpec binary(Kind kind, FunctionSpec a, FunctionSpec b) {
  FunctionSpec s;
  s.kind = kind;
  s.children.push_back(std::move(a));
  s.children.push_back(std::move(b));
  return s;
}

bool is_nonneg_integer(double v, int max) {
  return std::isfinite(v) && v >= 0.0 && v <= max && std::floor(v) == v;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Binding strength used to decide where parentheses are required.
int precedence(const FunctionSpec& s) {
  switch (s.kind) {
    case Kind::Sum:
    case Kind::Difference: return 1;
    case Kind::Product: return 2;
    default: return 3;
  }
}

}  // namespace

std::string_view to_string(FunctionSpec::Kind kind) {
  switch (kind) {
    case Kind::Constant: return "constant";
    case Kind::Gaussian: return "gaussian";
    case Kind::Hermite: return "hermite";
    case Kind::Bump: return "bump";
    case Kind::Subexp: return "subexp";
    case Kind::Poly: return "poly";
    case Kind::Translate: return "translate";
    case Kind::Modulate: return "modulate";
    case Kind::Scale: return "scale";
    case Kind::Sum: return "sum";
    case Kind::Difference: return "difference";
    case Kind::Product: return "product";
  }
  return "?";
}

FunctionSpec FunctionSpec::constant(double c) { return leaf(Kind::Constant, {c}); }
FunctionSpec FunctionSpec::gaussian(double a) { return leaf(Kind::Gaussian, {a}); }
FunctionSpec FunctionSpec::hermite(int k) { return leaf(Kind::Hermite, {static_cast<double>(k)}); }
FunctionSpec FunctionSpec::bump() { return leaf(Kind::Bump, {1.0}); }
FunctionSpec FunctionSpec::bump(int k) {
  auto s = leaf(Kind::Bump, {static_cast<double>(k)});
  s.explicit_order = true;
  return s;
}
FunctionSpec FunctionSpec::subexp(double s, double r) { return leaf(Kind::Subexp, {s, r}); }
FunctionSpec FunctionSpec::poly(int k) { return leaf(Kind::Poly, {static_cast<double>(k)}); }
FunctionSpec FunctionSpec::translate(FunctionSpec f, double x0) { return unary(Kind::Translate, std::move(f), x0); }
FunctionSpec FunctionSpec::modulate(FunctionSpec f, double xi0) { return unary(Kind::Modulate, std::move(f), xi0); }
FunctionSpec FunctionSpec::scale(FunctionSpec f, double c) { return unary(Kind::Scale, std::move(f), c); }
FunctionSpec FunctionSpec::sum(FunctionSpec a, FunctionSpec b) { return binary(Kind::Sum, std::move(a), std::move(b)); }
FunctionSpec FunctionSpec::difference(FunctionSpec a, FunctionSpec b) {
  return binary(Kind::Difference, std::move(a), std::move(b));
}
FunctionSpec FunctionSpec::product(FunctionSpec a, FunctionSpec b) {
  return binary(Kind::Product, std::move(a), std::move(b));
}

void validate(const FunctionSpec& spec) {
  auto expect = [&](std::size_t nparams, std::size_t nchildren) {
    if (spec.params.size() != nparams || spec.children.size() != nchildren) {
      throw Error(ErrorKind::MalformedSpec, std::string("wrong arity for ") + std::string(to_string(spec.kind)));
    }
  };
  for (double p : spec.params) {
    if (!std::isfinite(p)) throw Error(ErrorKind::MalformedSpec, "numeric parameters must be finite");
  }
  switch (spec.kind) {
    case Kind::Constant: expect(1, 0); break;
    case Kind::Gaussian:
      expect(1, 0);
      if (!(spec.params[0] > 0.0)) throw Error(ErrorKind::DomainError, "gaussian(a) needs a > 0");
      break;
    case Kind::Hermite:
      expect(1, 0);
      if (!is_nonneg_integer(spec.params[0], kMaxHermite))
        throw Error(ErrorKind::DomainError, "hermite(k) needs an integer 0 <= k <= 64");
      break;
    case Kind::Bump:
      expect(1, 0);
      if (!is_nonneg_integer(spec.params[0], kMaxBumpOrder) || spec.params[0] < 1.0)
        throw Error(ErrorKind::DomainError, "bump(k) needs an integer 1 <= k <= 16");
      break;
    case Kind::Subexp:
      expect(2, 0);
      if (!(spec.params[0] > 0.0)) throw Error(ErrorKind::DomainError, "subexp(s, r) needs s > 0");
      break;
    case Kind::Poly:
      expect(1, 0);
      if (!is_nonneg_integer(spec.params[0], kMaxPoly))
        throw Error(ErrorKind::DomainError, "poly(k) needs an integer 0 <= k <= 64");
      break;
    case Kind::Translate:
    case Kind::Modulate:
      expect(1, 1);
      validate(spec.children[0]);
      break;
    case Kind::Scale:
      expect(1, 1);
      if (spec.params[0] == 0.0) throw Error(ErrorKind::DomainError, "scale(f, c) needs c != 0");
      validate(spec.children[0]);
      break;
    case Kind::Sum:
    case Kind::Difference:
    case Kind::Product:
      expect(0, 2);
      validate(spec.children[0]);
      validate(spec.children[1]);
      break;
  }
}

double hermite_polynomial(int k, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int n = 1; n < k; ++n) {
    const double next = 2.0 * x * cur - 2.0 * n * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx evaluate(const FunctionSpec& spec, double x) {
  const auto& p = spec.params;
  switch (spec.kind) {
    case Kind::Constant: return p[0];
    case Kind::Gaussian: return std::exp(-0.5 * p[0] * x * x);
    case Kind::Hermite: return hermite_polynomial(static_cast<int>(p[0]), x) * std::exp(-0.5 * x * x);
    case Kind::Bump: {
      const double u = 1.0 - x * x;
      if (!(u > 0.0)) return 0.0;
      return std::exp(-std::pow(u, -p[0]));
    }
    case Kind::Subexp: return std::exp(-p[1] * std::pow(std::abs(x), 1.0 / p[0]));
    case Kind::Poly: return std::pow(x, static_cast<int>(p[0]));
    case Kind::Translate: return evaluate(spec.children[0], x - p[0]);
    case Kind::Modulate: return std::polar(1.0, p[0] * x) * evaluate(spec.children[0], x);
    case Kind::Scale: return evaluate(spec.children[0], x / p[0]);
    case Kind::Sum: return evaluate(spec.children[0], x) + evaluate(spec.children[1], x);
    case Kind::Difference: return evaluate(spec.children[0], x) - evaluate(spec.children[1], x);
    case Kind::Product: return evaluate(spec.children[0], x) * evaluate(spec.children[1], x);
  }
  return 0.0;
}

SampledFunction catalog_eval(const FunctionSpec& spec, const Grid1D& grid) {
  validate(spec);
  std::vector<cplx> values(grid.count());
  for (std::size_t j = 0; j < grid.count(); ++j) values[j] = evaluate(spec, grid.at(j));
  return SampledFunction(grid, std::move(values));
}

std::string pretty_print(const FunctionSpec& spec) {
  const auto& p = spec.params;
  auto child = [&](std::size_t i, bool right_operand) {
    const auto& c = spec.children[i];
    // Left-associative: a right operand of equal precedence needs parentheses.
    const bool paren = precedence(c) < precedence(spec) || (right_operand && precedence(c) == precedence(spec));
    return paren ? "(" + pretty_print(c) + ")" : pretty_print(c);
  };
  switch (spec.kind) {
    case Kind::Constant: return format_number(p[0]);
    case Kind::Gaussian: return "gaussian(" + format_number(p[0]) + ")";
    case Kind::Hermite: return "hermite(" + format_number(p[0]) + ")";
    case Kind::Bump: return spec.explicit_order ? "bump(" + format_number(p[0]) + ")" : "bump()";
    case Kind::Subexp: return "subexp(" + format_number(p[0]) + ", " + format_number(p[1]) + ")";
    case Kind::Poly: return "poly(" + format_number(p[0]) + ")";
    case Kind::Translate:
    case Kind::Modulate:
    case Kind::Scale:
      return std::string(to_string(spec.kind)) + "(" + pretty_print(spec.children[0]) + ", " + format_number(p[0]) + ")";
    case Kind::Sum: return child(0, false) + " + " + child(1, true);
    case Kind::Difference: return child(0, false) + " - " + child(1, true);
    case Kind::Product: return child(0, false) + "*" + child(1, true);
  }
  return {};
}

}  // namespace gstf
