#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gstf/types.hpp"

namespace gstf {

/// One row of a verification suite. `bound` is "max" when value must not
/// exceed tolerance and "min" when it must not fall below it.
struct CheckResult {
  std::string suite;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string bound;
  bool passed = false;
};

struct NamedFunction {
  std::string name;
  SampledFunction f;
};

/// Twelve reference functions: Gaussians of three widths, Hermite functions,
/// a bump, two sub-exponentials, a sampled Lorentzian, a translate and a
/// modulate.
std::vector<NamedFunction> reference_catalog(const Grid1D& grid);

/// Odd position lattice through the grid points with stride 8 (1 below 128
/// samples) spanning the grid, paired with the dual frequency grid.
TFGrid default_tfgrid(const Grid1D& grid);

/// suite in {identities, classification, toeplitz, all}; InvalidArgument otherwise.
std::vector<CheckResult> run_verification(std::string_view suite);

}  // namespace gstf
