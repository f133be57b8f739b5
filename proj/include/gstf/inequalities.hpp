#pragma once

namespace gstf {

/// Polynomial weight transfer (1+|xi-eta|^2)^-N <= 2^N (1+|xi|^2)^-N (1+|eta|^2)^N.
struct PeetreCheck {
  double lhs;
  double rhs;
  bool holds;
};

PeetreCheck peetre_bound_check(double xi, double eta, int N);

/// Two-sided comparison
///   C^-1 (|x|^p + |y|^p) <= |y|^p + |y-x|^p <= C (|x|^p + |y|^p),  p = 1/s,
/// with C(s) = 2^max(1/s - 1, 0) + 1.
struct SubexpTriangleCheck {
  bool lower_holds;
  bool upper_holds;
  double C_used;
};

double subexp_triangle_constant(double s);
SubexpTriangleCheck subexp_triangle_check(double x, double y, double s);

}  // namespace gstf
