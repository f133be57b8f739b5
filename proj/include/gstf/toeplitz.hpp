#pragma once

#include <string>
#include <vector>

#include "gstf/classify.hpp"
#include "gstf/types.hpp"

namespace gstf {

/// Tp(a) f = V*_phi2 (a . V_phi1 f). The symbol's grid is the STFT grid.
SampledFunction apply_toeplitz(const TFR& a, const SampledFunction& phi1, const SampledFunction& phi2,
                               const SampledFunction& f);

/// Symbols sampled on a time-frequency grid.
TFR constant_symbol(const TFGrid& grid, double value = 1.0);
/// exp(-(x^2 + xi^2) / 2).
TFR gaussian_symbol(const TFGrid& grid);
/// Indicator of x^2 + xi^2 <= R^2.
TFR disk_symbol(const TFGrid& grid, double radius);
/// 1 + x^2, a symbol of polynomial growth.
TFR polynomial_symbol(const TFGrid& grid);

struct ProductTransformDefect {
  double defect_plus = 0.0;
  double defect_minus = 0.0;
  /// +1 or -1: the phase sign with the smaller defect.
  int winning_sign = 0;
};

/// Compares the 2-D transform of conj(V_phi1 f) V_phi2 g, evaluated at eta on
/// tfgrid.xi and y on tfgrid.x, with
///   e^{+-i y eta} V_phi2 phi1(y, -eta) V_f g(-y, eta).
/// Both tfgrid axes must be symmetric about 0. Throws BoundaryMass when
/// either STFT carries more than 1e-10 of its peak on the grid boundary.
ProductTransformDefect stft_product_transform_defect(const SampledFunction& f, const SampledFunction& g,
                                                     const SampledFunction& phi1, const SampledFunction& phi2,
                                                     const TFGrid& tfgrid);

/// |(Tp f, g) - (a, conj(V_phi1 f) V_phi2 g)| relative to the larger side,
/// the right-hand pairing summed independently over the time-frequency grid.
double toeplitz_adjoint_residual(const TFR& a, const SampledFunction& phi1, const SampledFunction& phi2,
                                 const SampledFunction& f, const SampledFunction& g);

/// Re (Tp_{phi,phi}(a) f, f).
double toeplitz_quadratic_form(const TFR& a, const SampledFunction& phi, const SampledFunction& f);

struct ContinuityEntry {
  Verdict verdict_in = Verdict::Inconclusive;
  Verdict verdict_out = Verdict::Inconclusive;
  double r_fit_in = 0.0;
  double r_fit_out = 0.0;
  /// r_fit_out / r_fit_in; below 1 means the envelope widened.
  double degradation = 0.0;
};

struct ContinuityReport {
  std::string space;
  /// classify_symbol verdict for the symbol, recorded as a hypothesis check.
  Verdict symbol_verdict = Verdict::Inconclusive;
  std::vector<ContinuityEntry> entries;
  std::size_t members_out = 0;
  bool all_member = false;
};

/// Evidence (not proof) that Tp(a) maps the space named by idx into itself:
/// classifies each input and its image. Throws WindowNotInClass when a window
/// is not a member of idx.
ContinuityReport continuity_probe(const TFR& a, const SampledFunction& phi1, const SampledFunction& phi2,
                                  const std::vector<SampledFunction>& testset, const GSIndex& idx,
                                  const ClassifyOptions& opts = {});

}  // namespace gstf
