#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gstf/types.hpp"

namespace gstf {

enum class Verdict { Member, NotMember, Inconclusive };
std::string_view to_string(Verdict v);

/// Finite stand-ins for the "for every r / for every N" quantifiers plus the
/// numerical thresholds of the envelope fits.
struct ClassifyOptions {
  double r_min = 1e-3;
  int n_max = 8;
  std::vector<double> r_list = {0.25, 0.5, 1.0, 2.0, 4.0};
  double r_scale = 1.0;
  /// Samples at or below floor_rel * sup are treated as round-off.
  double floor_rel = 1e-13;
  /// A sup attained within this many samples of the resolved region's edge
  /// counts as attained at the truncation boundary.
  std::size_t guard = 2;
  /// classify_stft / dual_growth_report verify the window first.
  bool check_window = true;

  std::vector<double> trial_rates() const;
};

/// sup |f(x)| exp(r |x|^(1/s)) over the grid.
struct SupEstimate {
  double C = 0.0;
  bool overflow = false;
  std::size_t attained_at = 0;
  bool interior_attained = true;
};

SupEstimate sup_envelope_constant(const SampledFunction& f, double r, double s);

struct RateFit {
  enum class Flag { None, ZeroInput, CompactSupport, NoQualifying };
  /// Largest r with |f(x)| <= C_peak exp(-r (|x|^(1/s) - |x_peak|^(1/s))) on
  /// samples beyond the peak and at least one e-fold below it; +inf if flagged.
  double rate = kInf;
  Flag flag = Flag::None;
  /// The minimizing ratio is reached (up to ties) away from the resolved region's edge.
  bool resolved = true;
  std::size_t argmin = 0;
  std::size_t qualifying = 0;
};

std::string_view to_string(RateFit::Flag flag);

/// floor < 0 selects the default 1e-13 * sup |f|.
RateFit fit_decay_rate(const SampledFunction& f, double s, double floor = -1.0);

struct PolyEntry {
  int N = 0;
  double C = 0.0;
  bool interior_attained = true;
  std::size_t attained_at = 0;
};

/// C_N = sup |f(xi)| (1 + xi^2)^N for N = 0..n_max.
std::vector<PolyEntry> fit_poly_table(const SampledFunction& f, int n_max, double floor = -1.0);

struct TrialEntry {
  double r = 0.0;
  double C = 0.0;
  bool interior_attained = true;
  std::size_t attained_at = 0;
};

struct GrowthEntry {
  double r = 0.0;
  /// Smallest admissible N0, or -1 when none up to n_max works.
  int N0 = -1;
  double C = 0.0;
};

struct EnvelopeReport {
  Verdict verdict = Verdict::Inconclusive;
  /// Zero input: Member by convention.
  bool trivial = false;
  std::string space;
  std::string decay_axis;
  std::string fourier_axis;
  double C_peak = 0.0;
  double r_fit = kInf;
  RateFit::Flag rate_flag = RateFit::Flag::None;
  bool rate_resolved = true;
  std::vector<PolyEntry> N_table;
  std::vector<TrialEntry> beurling_table;
  std::vector<GrowthEntry> growth_table;
  double floor_rel = 0.0;
  std::size_t guard = 0;
  std::vector<std::string> notes;
  /// Sub-reports (symbol and its 2-D transform for classify_symbol).
  std::vector<EnvelopeReport> parts;
};

/// Membership of f in a one-parameter space via the derivative-free
/// characterizations: sub-exponential decay on one side, faster-than-polynomial
/// decay of the Fourier transform on the other.
EnvelopeReport classify_function(const SampledFunction& f, const GSIndex& idx, const ClassifyOptions& opts = {});

/// Same verdict rules applied to the short-time Fourier transform with the
/// given window: decay in x with polynomial decay in xi for S_s / Sigma_s,
/// the transposed arrangement for S^sigma / Sigma^sigma.
EnvelopeReport classify_stft(const SampledFunction& f, const SampledFunction& window, const GSIndex& idx,
                             const TFGrid& tfgrid, const ClassifyOptions& opts = {});

/// Dual-space probe: smallest N0 such that
/// |V f| (1+xi^2)^-N0 exp(-r |x|^(1/s)) has an interior sup, per trial r.
/// Roumieu duals need an N0 for every trial r, Beurling duals for one.
EnvelopeReport dual_growth_report(const SampledFunction& f, const SampledFunction& window, const GSIndex& idx,
                                  const TFGrid& tfgrid, const ClassifyOptions& opts = {});

enum class SymbolSide { PositionDecay, FrequencyDecay };

/// Mixed symbol classes: a decays sub-exponentially in one variable and
/// faster than any polynomial in the other, and its 2-D transform satisfies
/// the mirrored condition.
EnvelopeReport classify_symbol(const TFR& a, double s_or_sigma, SymbolSide side, const ClassifyOptions& opts = {});

namespace envelope {

/// A sampled magnitude profile |f| against its coordinates.
struct Profile {
  std::vector<double> mag;
  std::vector<double> coord;
};

Profile profile_of(const SampledFunction& f);

struct WeightedSup {
  double log_value = -kInf;
  std::size_t argmax = 0;
  bool interior = true;
  bool empty = true;
};

/// sup over samples above floor of log(mag) + log_weight(coord). Interior
/// means some near-maximal sample (ties within 1e-9 relative) sits at least
/// `guard` samples inside the resolved region.
WeightedSup weighted_sup(const Profile& p, double floor, std::size_t guard,
                         const std::function<double(double)>& log_weight);

RateFit rate_fit(const Profile& p, double s, double floor, std::size_t guard);

std::vector<PolyEntry> poly_table(const Profile& p, int n_max, double floor, std::size_t guard);

}  // namespace envelope

}  // namespace gstf
