#include "gstf/classify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "gstf/transforms.hpp"

namespace gstf {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "Member";
    case Verdict::NotMember: return "NotMember";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(RateFit::Flag flag) {
  switch (flag) {
    case RateFit::Flag::None: return "none";
    case RateFit::Flag::ZeroInput: return "zero_input";
    case RateFit::Flag::CompactSupport: return "compact_support";
    case RateFit::Flag::NoQualifying: return "no_qualifying_samples";
  }
  return "?";
}

std::vector<double> ClassifyOptions::trial_rates() const {
  std::vector<double> out(r_list.size());
  std::transform(r_list.begin(), r_list.end(), out.begin(), [&](double r) { return r * r_scale; });
  return out;
}

namespace envelope {

Profile profile_of(const SampledFunction& f) { return {f.magnitudes(), f.grid().coordinates()}; }

namespace {

struct Span {
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool empty = true;
};

Span resolved_span(const std::vector<double>& mag, double floor) {
  Span s;
  for (std::size_t j = 0; j < mag.size(); ++j) {
    if (mag[j] > floor) {
      if (s.empty) s.lo = j;
      s.hi = j;
      s.empty = false;
    }
  }
  return s;
}

bool inside(const Span& s, std::size_t j, std::size_t guard) { return j >= s.lo + guard && j + guard <= s.hi; }

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

}  // namespace

WeightedSup weighted_sup(const Profile& p, double floor, std::size_t guard,
                         const std::function<double(double)>& log_weight) {
  WeightedSup out;
  const Span span = resolved_span(p.mag, floor);
  if (span.empty) return out;
  std::vector<double> value(p.mag.size(), -kInf);
  for (std::size_t j = span.lo; j <= span.hi; ++j) {
    if (!(p.mag[j] > floor)) continue;
    value[j] = std::log(p.mag[j]) + log_weight(p.coord[j]);
    if (value[j] > out.log_value) {
      out.log_value = value[j];
      out.argmax = j;
    }
  }
  out.empty = false;
  const double tol = 1e-9 * std::max(1.0, std::abs(out.log_value));
  out.interior = false;
  for (std::size_t j = span.lo; j <= span.hi && !out.interior; ++j) {
    out.interior = value[j] >= out.log_value - tol && inside(span, j, guard);
  }
  return out;
}

RateFit rate_fit(const Profile& p, double s, double floor, std::size_t guard) {
  RateFit fit;
  const std::size_t n = p.mag.size();
  const double peak = max_of(p.mag);
  if (peak == 0.0) {
    fit.flag = RateFit::Flag::ZeroInput;
    return fit;
  }
  // Exact zeros covering both guard bands: the samples have compact support.
  bool compact = n > 2 * (guard + 1);
  for (std::size_t j = 0; j <= guard && compact; ++j) compact = p.mag[j] == 0.0 && p.mag[n - 1 - j] == 0.0;
  if (compact) {
    fit.flag = RateFit::Flag::CompactSupport;
    return fit;
  }

  const std::size_t ip = static_cast<std::size_t>(std::max_element(p.mag.begin(), p.mag.end()) - p.mag.begin());
  const double exponent = 1.0 / s;
  const double anchor = std::abs(p.coord[ip]);
  const double anchor_pow = std::pow(anchor, exponent);
  const double step = n > 1 ? std::abs(p.coord[1] - p.coord[0]) : 0.0;
  const double log_peak = std::log(peak);
  // Samples within one e-fold of the peak belong to its core; near a flat
  // off-center maximum their ratios say nothing about the tail.
  const double core_level = peak * std::exp(-1.0);

  // Work with the outward running max, which obeys the same envelope bounds
  // (the weights grow with |x|) but has no oscillation zeros.
  std::vector<double> m(p.mag);
  for (std::size_t j = n - 1; j-- > 0;) {
    if (p.coord[j] >= 0.0) m[j] = std::max(m[j], m[j + 1]);
  }
  for (std::size_t j = 1; j < n; ++j) {
    if (p.coord[j] <= 0.0) m[j] = std::max(m[j], m[j - 1]);
  }

  // slack[j]: how far round-off at the 1e-15 relative level can move ratio[j].
  const double noise = 1e-15 * peak;
  std::vector<double> ratio(n, kInf);
  std::vector<double> slack(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double ax = std::abs(p.coord[j]);
    if (!(m[j] > floor) || m[j] > core_level || ax < anchor + step * (1.0 - 1e-9)) continue;
    const double denom = std::pow(ax, exponent) - anchor_pow;
    ratio[j] = (log_peak - std::log(m[j])) / denom;
    slack[j] = noise / m[j] / denom;
    ++fit.qualifying;
    if (ratio[j] < fit.rate) {
      fit.rate = ratio[j];
      fit.argmin = j;
    }
  }
  if (fit.qualifying == 0) {
    fit.flag = RateFit::Flag::NoQualifying;
    fit.resolved = false;
    return fit;
  }
  // The minimizing ratio must recur clear of the resolved edge. A ratio that
  // still falls there, however slowly, gives no evidence of a positive limit,
  // so the band scales with the span rather than being a fixed sample count.
  const Span span = resolved_span(p.mag, floor);
  const std::size_t band = std::max(guard, (span.hi - span.lo) / 40);
  const double tol = 1e-6 * fit.rate + 1e-12 + slack[fit.argmin];
  fit.resolved = false;
  for (std::size_t j = 0; j < n && !fit.resolved; ++j) {
    fit.resolved = ratio[j] - slack[j] <= fit.rate + tol && inside(span, j, band);
  }
  return fit;
}

std::vector<PolyEntry> poly_table(const Profile& p, int n_max, double floor, std::size_t guard) {
  std::vector<PolyEntry> table;
  for (int N = 0; N <= n_max; ++N) {
    const auto sup = weighted_sup(p, floor, guard, [N](double xi) { return N * std::log1p(xi * xi); });
    PolyEntry e;
    e.N = N;
    e.C = sup.empty ? 0.0 : std::exp(sup.log_value);
    e.interior_attained = sup.empty || sup.interior;
    e.attained_at = sup.argmax;
    table.push_back(e);
  }
  return table;
}

}  // namespace envelope

namespace {

using envelope::Profile;

constexpr double kMaxLog = 709.0;

double floor_of(const Profile& p, double floor_rel) {
  double m = 0.0;
  for (double v : p.mag) m = std::max(m, v);
  return floor_rel * m;
}

std::size_t resolved_count(const Profile& p, double floor) {
  return static_cast<std::size_t>(std::count_if(p.mag.begin(), p.mag.end(), [&](double v) { return v > floor; }));
}

enum class SideResult { Pass, Fail, Unknown };

SideResult combine(SideResult a, SideResult b) {
  if (a == SideResult::Fail || b == SideResult::Fail) return SideResult::Fail;
  if (a == SideResult::Unknown || b == SideResult::Unknown) return SideResult::Unknown;
  return SideResult::Pass;
}

Verdict verdict_of(SideResult r) {
  switch (r) {
    case SideResult::Pass: return Verdict::Member;
    case SideResult::Fail: return Verdict::NotMember;
    case SideResult::Unknown: return Verdict::Inconclusive;
  }
  return Verdict::Inconclusive;
}

// Sub-exponential side. Roumieu: the fitted rate is positive and resolved.
// Beurling: every trial rate has an interior sup.
SideResult assess_decay(const Profile& p, double param, Regularity reg, const ClassifyOptions& opts,
                        EnvelopeReport& report) {
  const double floor = floor_of(p, opts.floor_rel);
  const RateFit fit = envelope::rate_fit(p, param, floor, opts.guard);
  report.C_peak = [&] {
    double m = 0.0;
    for (double v : p.mag) m = std::max(m, v);
    return m;
  }();
  report.r_fit = fit.rate;
  report.rate_flag = fit.flag;
  report.rate_resolved = fit.resolved;

  if (fit.flag == RateFit::Flag::CompactSupport) {
    if (reg == Regularity::Beurling) {
      for (double r : opts.trial_rates()) report.beurling_table.push_back({r, 0.0, true, 0});
    }
    return SideResult::Pass;
  }
  if (resolved_count(p, floor) < 2 * opts.guard + 3) {
    report.notes.push_back("decay side: too few samples above the floor");
    return SideResult::Unknown;
  }

  if (reg == Regularity::Roumieu) {
    if (fit.flag == RateFit::Flag::NoQualifying) {
      report.notes.push_back("decay side: no samples beyond the peak radius");
      return SideResult::Unknown;
    }
    if (!fit.resolved) {
      report.notes.push_back("decay side: fitted rate still falling at the resolved edge");
      return SideResult::Fail;
    }
    if (fit.rate < opts.r_min) {
      report.notes.push_back("decay side: fitted rate below r_min");
      return SideResult::Fail;
    }
    return SideResult::Pass;
  }

  SideResult result = SideResult::Pass;
  const double exponent = 1.0 / param;
  for (double r : opts.trial_rates()) {
    const auto sup =
        envelope::weighted_sup(p, floor, opts.guard, [&](double x) { return r * std::pow(std::abs(x), exponent); });
    TrialEntry e;
    e.r = r;
    e.C = sup.log_value > kMaxLog ? kInf : std::exp(sup.log_value);
    e.interior_attained = sup.interior;
    e.attained_at = sup.argmax;
    report.beurling_table.push_back(e);
    if (!sup.interior && result == SideResult::Pass) {
      report.notes.push_back("decay side: trial r = " + std::to_string(r) + " attained at the boundary");
      result = SideResult::Fail;
    }
  }
  return result;
}

SideResult assess_poly(const Profile& p, const ClassifyOptions& opts, EnvelopeReport& report) {
  const double floor = floor_of(p, opts.floor_rel);
  report.N_table = envelope::poly_table(p, opts.n_max, floor, opts.guard);
  if (resolved_count(p, floor) < 2 * opts.guard + 3) {
    report.notes.push_back("polynomial side: too few samples above the floor");
    return SideResult::Unknown;
  }
  // A profile still above the floor at the grid edge is shaped there by
  // truncation and aliasing, so its attainment pattern is not evidence.
  const std::size_t n = p.mag.size();
  double tail = 0.0;
  for (std::size_t j = 0; j <= opts.guard && j < n; ++j) tail = std::max({tail, p.mag[j], p.mag[n - 1 - j]});
  if (tail > floor) {
    report.notes.push_back("polynomial side: profile has not decayed to the floor at the grid edge");
    return SideResult::Unknown;
  }
  for (const auto& e : report.N_table) {
    if (!e.interior_attained) {
      report.notes.push_back("polynomial side: N = " + std::to_string(e.N) + " attained at the boundary");
      return SideResult::Fail;
    }
  }
  return SideResult::Pass;
}

void require_one_parameter(const GSIndex& idx) {
  if (!idx.one_parameter()) {
    throw Error(ErrorKind::TwoParameterIndex, "classification needs a one-parameter index; test each side separately");
  }
}

EnvelopeReport base_report(const GSIndex& idx, const ClassifyOptions& opts) {
  EnvelopeReport r;
  r.space = idx.name();
  r.floor_rel = opts.floor_rel;
  r.guard = opts.guard;
  return r;
}

EnvelopeReport trivial_report(EnvelopeReport r) {
  r.verdict = Verdict::Member;
  r.trivial = true;
  r.rate_flag = RateFit::Flag::ZeroInput;
  r.notes.push_back("zero input: member of every space");
  return r;
}

EnvelopeReport assess(const Profile& decay, const Profile& poly, double param, Regularity reg,
                      const ClassifyOptions& opts, EnvelopeReport report) {
  const SideResult d = assess_decay(decay, param, reg, opts, report);
  const SideResult q = assess_poly(poly, opts, report);
  report.verdict = verdict_of(combine(d, q));
  return report;
}

Profile tfr_profile(std::vector<double> mag, const Grid1D& axis) { return {std::move(mag), axis.coordinates()}; }

void require_window(const SampledFunction& window, const GSIndex& idx, const ClassifyOptions& opts) {
  if (!opts.check_window) return;
  const auto wr = classify_function(window, idx, opts);
  if (wr.verdict != Verdict::Member) {
    throw Error(ErrorKind::WindowNotInClass,
                "window is not a member of " + idx.name() + " (verdict " + std::string(to_string(wr.verdict)) + ")");
  }
}

// Rows of V f whose window overlaps the region beyond f's grid, weighted by
// the level f still has at its edges, by more than `level`. Returns the
// central block of rows that are safe.
std::pair<std::size_t, std::size_t> reliable_rows(const SampledFunction& f, const SampledFunction& window,
                                                  const TFGrid& tfgrid, double level, std::size_t guard) {
  const std::size_t n = f.size();
  double edge = 0.0;
  for (std::size_t j = 0; j <= guard && j < n; ++j) edge = std::max({edge, std::abs(f[j]), std::abs(f[n - 1 - j])});
  const std::size_t rows = tfgrid.x.count();
  if (edge == 0.0) return {0, rows - 1};
  const double lo = f.grid().at(0);
  const double hi = f.grid().at(n - 1);
  const Grid1D& wg = window.grid();
  auto spill = [&](double x) {
    double w = 0.0;
    for (std::size_t j = 0; j < window.size(); ++j) {
      const double u = wg.at(j);
      if (u >= hi - x || u <= lo - x) w = std::max(w, std::abs(window[j]));
    }
    return edge * w;
  };
  std::size_t i0 = rows / 2, i1 = rows / 2;
  while (i0 > 0 && spill(tfgrid.x.at(i0 - 1)) <= level) --i0;
  while (i1 + 1 < rows && spill(tfgrid.x.at(i1 + 1)) <= level) ++i1;
  return {i0, i1};
}

}  // namespace

SupEstimate sup_envelope_constant(const SampledFunction& f, double r, double s) {
  if (!(s > 0.0)) throw Error(ErrorKind::InvalidArgument, "sup_envelope_constant needs s > 0");
  const Profile p = envelope::profile_of(f);
  const double exponent = 1.0 / s;
  SupEstimate out;
  const auto sup = envelope::weighted_sup(p, 0.0, 2, [&](double x) { return r * std::pow(std::abs(x), exponent); });
  if (sup.empty) {
    out.attained_at = f.size() / 2;
    return out;
  }
  out.overflow = sup.log_value > kMaxLog;
  out.C = out.overflow ? kInf : std::exp(sup.log_value);
  out.attained_at = sup.argmax;
  out.interior_attained = sup.interior;
  return out;
}

RateFit fit_decay_rate(const SampledFunction& f, double s, double floor) {
  if (!(s > 0.0)) throw Error(ErrorKind::InvalidArgument, "fit_decay_rate needs s > 0");
  const Profile p = envelope::profile_of(f);
  if (floor < 0.0) floor = 1e-13 * f.sup_abs();
  return envelope::rate_fit(p, s, floor, 2);
}

std::vector<PolyEntry> fit_poly_table(const SampledFunction& f, int n_max, double floor) {
  if (n_max < 0 || n_max > 16) throw Error(ErrorKind::InvalidArgument, "fit_poly_table needs 0 <= N_max <= 16");
  if (floor < 0.0) floor = 1e-13 * f.sup_abs();
  return envelope::poly_table(envelope::profile_of(f), n_max, floor, 2);
}

EnvelopeReport classify_function(const SampledFunction& f, const GSIndex& idx, const ClassifyOptions& opts) {
  require_one_parameter(idx);
  EnvelopeReport report = base_report(idx, opts);
  if (f.sup_abs() == 0.0) return trivial_report(std::move(report));
  const SampledFunction F = dft(f);
  if (idx.has_s()) {
    report.decay_axis = "x";
    report.fourier_axis = "xi";
    return assess(envelope::profile_of(f), envelope::profile_of(F), idx.s, idx.regularity, opts, std::move(report));
  }
  report.decay_axis = "xi";
  report.fourier_axis = "x";
  return assess(envelope::profile_of(F), envelope::profile_of(f), idx.sigma, idx.regularity, opts, std::move(report));
}

EnvelopeReport classify_stft(const SampledFunction& f, const SampledFunction& window, const GSIndex& idx,
                             const TFGrid& tfgrid, const ClassifyOptions& opts) {
  require_one_parameter(idx);
  require_window(window, idx, opts);
  EnvelopeReport report = base_report(idx, opts);
  const TFR V = stft(f, window, tfgrid);
  if (V.sup_abs() == 0.0) return trivial_report(std::move(report));
  const auto [i0, i1] = reliable_rows(f, window, tfgrid, opts.floor_rel * V.sup_abs(), opts.guard);
  const bool trimmed = i0 != 0 || i1 + 1 != V.rows();
  if (trimmed) report.notes.push_back("x rows dropped where the window reaches past undecayed data");
  // Sup over xi of each x-row gives the x profile; sup over x of each
  // xi-column gives the xi profile. Aggregating per-row tables by max is the
  // same as tabulating the column profile.
  Profile xprof, xiprof;
  xiprof.mag.assign(V.cols(), 0.0);
  xiprof.coord = tfgrid.xi.coordinates();
  for (std::size_t i = i0; i <= i1; ++i) {
    double m = 0.0;
    for (std::size_t k = 0; k < V.cols(); ++k) {
      const double a = std::abs(V(i, k));
      m = std::max(m, a);
      xiprof.mag[k] = std::max(xiprof.mag[k], a);
    }
    xprof.mag.push_back(m);
    xprof.coord.push_back(tfgrid.x.at(i));
  }
  if (idx.has_s()) {
    report.decay_axis = "x";
    report.fourier_axis = "xi";
    report = assess(xprof, xiprof, idx.s, idx.regularity, opts, std::move(report));
  } else {
    report.decay_axis = "xi";
    report.fourier_axis = "x";
    report = assess(xiprof, xprof, idx.sigma, idx.regularity, opts, std::move(report));
  }
  // The dropped rows hide the x tail, so the x side cannot certify membership.
  if (trimmed && report.verdict == Verdict::Member) report.verdict = Verdict::Inconclusive;
  return report;
}

EnvelopeReport dual_growth_report(const SampledFunction& f, const SampledFunction& window, const GSIndex& idx,
                                  const TFGrid& tfgrid, const ClassifyOptions& opts) {
  require_one_parameter(idx);
  require_window(window, idx, opts);
  EnvelopeReport report = base_report(idx, opts);
  report.space = "(" + idx.name() + ")'";
  const TFR V = stft(f, window, tfgrid);
  if (V.sup_abs() == 0.0) return trivial_report(std::move(report));

  const bool decay_in_x = idx.has_s();
  report.decay_axis = decay_in_x ? "x" : "xi";
  report.fourier_axis = decay_in_x ? "xi" : "x";
  const double exponent = 1.0 / (decay_in_x ? idx.s : idx.sigma);
  const std::size_t rows = V.rows();
  const std::size_t cols = V.cols();
  const std::size_t g = opts.guard;

  std::vector<double> logmag(rows * cols, -kInf);
  std::size_t ilo = rows, ihi = 0, klo = cols, khi = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      const double m = std::abs(V(i, k));
      if (m == 0.0) continue;
      logmag[i * cols + k] = std::log(m);
      ilo = std::min(ilo, i);
      ihi = std::max(ihi, i);
      klo = std::min(klo, k);
      khi = std::max(khi, k);
    }
  }
  report.C_peak = V.sup_abs();
  // Rows whose window reaches past undecayed data would see the truncation.
  const auto [i0, i1] = reliable_rows(f, window, tfgrid, opts.floor_rel * V.sup_abs(), g);
  if (i0 != 0 || i1 + 1 != rows) report.notes.push_back("x rows dropped where the window reaches past undecayed data");
  ilo = std::max(ilo, i0);
  ihi = std::min(ihi, i1);

  bool all = true;
  bool any = false;
  for (double r : opts.trial_rates()) {
    GrowthEntry entry;
    entry.r = r;
    for (int N0 = 0; N0 <= opts.n_max; ++N0) {
      double best = -kInf;
      std::vector<double> val(rows * cols, -kInf);
      for (std::size_t i = ilo; i <= ihi; ++i) {
        const double x = tfgrid.x.at(i);
        for (std::size_t k = 0; k < cols; ++k) {
          if (logmag[i * cols + k] == -kInf) continue;
          const double xi = tfgrid.xi.at(k);
          const double poly_var = decay_in_x ? xi : x;
          const double exp_var = decay_in_x ? x : xi;
          val[i * cols + k] =
              logmag[i * cols + k] - N0 * std::log1p(poly_var * poly_var) - r * std::pow(std::abs(exp_var), exponent);
          best = std::max(best, val[i * cols + k]);
        }
      }
      const double tol = 1e-9 * std::max(1.0, std::abs(best));
      bool interior = false;
      for (std::size_t i = ilo + g; i + g <= ihi && !interior; ++i)
        for (std::size_t k = klo + g; k + g <= khi && !interior; ++k) interior = val[i * cols + k] >= best - tol;
      if (interior) {
        entry.N0 = N0;
        entry.C = std::exp(best);
        break;
      }
    }
    if (entry.N0 < 0) report.notes.push_back("no N0 <= n_max for trial r = " + std::to_string(r));
    all = all && entry.N0 >= 0;
    any = any || entry.N0 >= 0;
    report.growth_table.push_back(entry);
  }
  const bool member = idx.regularity == Regularity::Roumieu ? all : any;
  report.verdict = member ? Verdict::Member : Verdict::NotMember;
  return report;
}

EnvelopeReport classify_symbol(const TFR& a, double s_or_sigma, SymbolSide side, const ClassifyOptions& opts) {
  if (!(s_or_sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "classify_symbol needs a positive parameter");
  EnvelopeReport report;
  report.space = side == SymbolSide::PositionDecay ? "S_{s,inf}^{inf,s}" : "S_{inf,s}^{s,inf}";
  report.floor_rel = opts.floor_rel;
  report.guard = opts.guard;
  if (a.sup_abs() == 0.0) return trivial_report(std::move(report));

  const TFR ahat = fourier2d(a);
  const Profile ax = tfr_profile(a.row_sup(), a.grid().x);
  const Profile axi = tfr_profile(a.col_sup(), a.grid().xi);
  const Profile heta = tfr_profile(ahat.row_sup(), ahat.grid().x);
  const Profile hy = tfr_profile(ahat.col_sup(), ahat.grid().xi);

  EnvelopeReport symbol = report;
  EnvelopeReport transform = report;
  if (side == SymbolSide::PositionDecay) {
    symbol.decay_axis = "x";
    symbol.fourier_axis = "xi";
    transform.decay_axis = "y";
    transform.fourier_axis = "eta";
    symbol = assess(ax, axi, s_or_sigma, Regularity::Roumieu, opts, std::move(symbol));
    transform = assess(hy, heta, s_or_sigma, Regularity::Roumieu, opts, std::move(transform));
  } else {
    symbol.decay_axis = "xi";
    symbol.fourier_axis = "x";
    transform.decay_axis = "eta";
    transform.fourier_axis = "y";
    symbol = assess(axi, ax, s_or_sigma, Regularity::Roumieu, opts, std::move(symbol));
    transform = assess(heta, hy, s_or_sigma, Regularity::Roumieu, opts, std::move(transform));
  }
  auto side_of = [](Verdict v) {
    return v == Verdict::Member ? SideResult::Pass : v == Verdict::NotMember ? SideResult::Fail : SideResult::Unknown;
  };
  report.verdict = verdict_of(combine(side_of(symbol.verdict), side_of(transform.verdict)));
  report.decay_axis = symbol.decay_axis;
  report.fourier_axis = symbol.fourier_axis;
  report.C_peak = symbol.C_peak;
  report.r_fit = symbol.r_fit;
  report.rate_flag = symbol.rate_flag;
  report.rate_resolved = symbol.rate_resolved;
  report.N_table = symbol.N_table;
  report.parts = {std::move(symbol), std::move(transform)};
  return report;
}

}  // namespace gstf
