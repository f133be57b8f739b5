#include "gstf/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "gstf/types.hpp"

namespace gstf {

PeetreCheck peetre_bound_check(double xi, double eta, int N) {
  if (N < 0 || N > 64) throw Error(ErrorKind::InvalidArgument, "peetre_bound_check needs 0 <= N <= 64");
  const double d = xi - eta;
  // Compare in the log domain; the direct values may overflow for large |eta|.
  const double log_lhs = -N * std::log1p(d * d);
  const double log_rhs = N * (std::log(2.0) - std::log1p(xi * xi) + std::log1p(eta * eta));
  return {std::exp(log_lhs), std::exp(log_rhs), log_lhs <= log_rhs};
}

double subexp_triangle_constant(double s) {
  if (!(s > 0.0)) throw Error(ErrorKind::InvalidArgument, "subexp_triangle_constant needs s > 0");
  return std::pow(2.0, std::max(1.0 / s - 1.0, 0.0)) + 1.0;
}

SubexpTriangleCheck subexp_triangle_check(double x, double y, double s) {
  const double C = subexp_triangle_constant(s);
  const double p = 1.0 / s;
  const double outer = std::pow(std::abs(x), p) + std::pow(std::abs(y), p);
  const double middle = std::pow(std::abs(y), p) + std::pow(std::abs(y - x), p);
  // Equality is attained (x = 0 in the upper bound), so allow pow rounding.
  constexpr double slack = 1.0 + 1e-14;
  return {outer / C <= middle * slack, middle <= C * outer * slack, C};
}

}  // namespace gstf
