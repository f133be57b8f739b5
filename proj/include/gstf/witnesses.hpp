#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gstf/catalog.hpp"
#include "gstf/classify.hpp"
#include "gstf/types.hpp"

namespace gstf {

/// A sampled nontrivial member of a two-parameter space.
struct Witness {
  /// "gaussian(1)", "bump(3)" or "dft(bump(3))".
  std::string construction;
  /// The catalog function that is sampled (or whose transform is sampled).
  FunctionSpec spec;
  bool fourier_image = false;
  SampledFunction samples;
  /// For transform-side witnesses, the catalog spectrum sampled exactly on
  /// dual_grid(samples.grid()). Its exact zeros survive, unlike dft(samples).
  std::optional<SampledFunction> spectrum;
  /// Options for the self-check of each side. Beurling trial lists are placed
  /// relative to the Roumieu rate the samples resolve; see check_witness.
  ClassifyOptions decay_options;
  ClassifyOptions fourier_options;
};

/// Gaussian when both indices allow it, a compactly supported bump of Gevrey
/// order 1 + 1/k strictly below sigma, or the transform of such a bump when s
/// is large enough. Throws TrivialSpace on s + sigma <= 1 (Beurling) or
/// s + sigma < 1 (Roumieu), UnsupportedRegion where none of the three applies.
Witness make_witness(const GSIndex& idx);

/// Same construction sampled on a caller-supplied centered power-of-two grid.
Witness make_witness(const GSIndex& idx, const Grid1D& grid);

/// Grid on which make_witness(idx) samples its construction.
Grid1D witness_grid(const GSIndex& idx);

struct WitnessCheck {
  EnvelopeReport decay_side;
  EnvelopeReport fourier_side;
  bool passed = false;
};

/// Classifies the witness against both one-parameter sides of idx. The
/// Fourier side of a transform-side witness is read off its exact spectrum
/// as the decay side with index sigma.
///
/// Beurling sides: "every r" cannot be sampled past the noise floor, where
/// every profile ends. The desk proxy used here is a trial list topped at
/// kBeurlingMargin times the Roumieu rate fitted on the same samples, so the
/// decay ratio must keep growing inside the resolved window. Profiles whose
/// ratio is constant (members of the Roumieu space only) fail it.
WitnessCheck check_witness(const Witness& w, const GSIndex& idx);

inline constexpr double kBeurlingMargin = 1.05;

struct DemoCandidate {
  std::string name;
  bool passed = false;
  /// "decay" or "fourier" for the first side that failed.
  std::string failing_side;
  /// First trial rate whose weighted sup left the interior; NaN if the side
  /// failed on its polynomial table instead.
  double first_failing_r = 0.0;
  std::size_t attained_at = 0;
  std::string diagnostic;
};

struct BoundaryDemo {
  double s = 0.0;
  double sigma = 0.0;
  std::vector<DemoCandidate> candidates;
  std::size_t passing = 0;
};

/// Runs the Beurling two-sided trial-list test at (s, 1 - s) on Gaussians and
/// Hermite functions. The space is trivial there, so no candidate should pass.
BoundaryDemo boundary_triviality_demo(double s);
BoundaryDemo boundary_triviality_demo(double s, const Grid1D& grid);

}  // namespace gstf
