#include "gstf/toeplitz.hpp"

#include <algorithm>
#include <cmath>

#include "gstf/parallel.hpp"
#include "gstf/transforms.hpp"

namespace gstf {

namespace {

void require_grid(const SampledFunction& a, const SampledFunction& b, const char* what) {
  if (!a.grid().matches(b.grid())) throw Error(ErrorKind::GridMismatch, std::string(what) + ": grids differ");
}

void require_symbol_grid(const TFR& a, const TFR& V) {
  if (!a.grid().x.matches(V.grid().x) || !a.grid().xi.matches(V.grid().xi))
    throw Error(ErrorKind::GridMismatch, "symbol grid differs from the STFT grid");
}

TFR sample_symbol(const TFGrid& grid, auto&& fn) {
  std::vector<cplx> v(grid.x.count() * grid.xi.count());
  for (std::size_t i = 0; i < grid.x.count(); ++i)
    for (std::size_t k = 0; k < grid.xi.count(); ++k) v[i * grid.xi.count() + k] = fn(grid.x.at(i), grid.xi.at(k));
  return TFR(grid, std::move(v));
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

}  // namespace

SampledFunction apply_toeplitz(const TFR& a, const SampledFunction& phi1, const SampledFunction& phi2,
                               const SampledFunction& f) {
  require_grid(f, phi1, "apply_toeplitz");
  require_grid(f, phi2, "apply_toeplitz");
  TFR V = stft(f, phi1, a.grid());
  require_symbol_grid(a, V);
  std::vector<cplx> prod(V.values().begin(), V.values().end());
  for (std::size_t j = 0; j < prod.size(); ++j) prod[j] *= a.values()[j];
  return adjoint_stft(TFR(a.grid(), std::move(prod)), phi2);
}

TFR constant_symbol(const TFGrid& grid, double value) {
  return sample_symbol(grid, [value](double, double) { return cplx(value); });
}

TFR gaussian_symbol(const TFGrid& grid) {
  return sample_symbol(grid, [](double x, double xi) { return cplx(std::exp(-(x * x + xi * xi) / 2.0)); });
}

TFR disk_symbol(const TFGrid& grid, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "disk radius must be positive");
  return sample_symbol(grid, [radius](double x, double xi) { return cplx(x * x + xi * xi <= radius * radius ? 1.0 : 0.0); });
}

TFR polynomial_symbol(const TFGrid& grid) {
  return sample_symbol(grid, [](double x, double) { return cplx(1.0 + x * x); });
}

ProductTransformDefect stft_product_transform_defect(const SampledFunction& f, const SampledFunction& g,
                                                     const SampledFunction& phi1, const SampledFunction& phi2,
                                                     const TFGrid& tfgrid) {
  require_grid(f, g, "stft_product_transform_defect");
  require_grid(f, phi1, "stft_product_transform_defect");
  require_grid(f, phi2, "stft_product_transform_defect");
  if (!tfgrid.x.centered() || !tfgrid.xi.centered())
    throw Error(ErrorKind::InvalidArgument, "product transform check needs axes symmetric about 0");

  const TFR V1 = stft(f, phi1, tfgrid);
  const TFR V2 = stft(g, phi2, tfgrid);
  constexpr double kBoundary = 1e-10;
  if (boundary_ratio(V1) > kBoundary || boundary_ratio(V2) > kBoundary)
    throw Error(ErrorKind::BoundaryMass, "STFTs have not decayed at the tfgrid boundary");

  const std::size_t nx = tfgrid.x.count();
  const std::size_t nxi = tfgrid.xi.count();

  // B(i, n) = sum_k conj(V1) V2 (x_i, xi_k) e^{-i xi_k y_n}, y on the x axis.
  std::vector<cplx> B(nx * nx);
  parallel_for(nx, [&](std::size_t i) {
    for (std::size_t n = 0; n < nx; ++n) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < nxi; ++k)
        acc += std::conj(V1(i, k)) * V2(i, k) * std::polar(1.0, -tfgrid.xi.at(k) * tfgrid.x.at(n));
      B[i * nx + n] = acc;
    }
  });
  // lhs(n, m) = (2 pi)^-1 sum_i B(i, n) e^{-i x_i eta_m} dx dxi, eta on the xi axis.
  const double weight = tfgrid.x.step() * tfgrid.xi.step() / (2.0 * kPi);
  std::vector<cplx> lhs(nx * nxi);
  parallel_for(nx, [&](std::size_t n) {
    for (std::size_t m = 0; m < nxi; ++m) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < nx; ++i) acc += B[i * nx + n] * std::polar(1.0, -tfgrid.x.at(i) * tfgrid.xi.at(m));
      lhs[n * nxi + m] = weight * acc;
    }
  });

  // Symmetric axes: -y and -eta are the mirrored indices.
  const TFR W = stft(phi1, phi2, tfgrid);
  const TFR U = stft(g, f, tfgrid);
  std::vector<cplx> plus(nx * nxi), minus(nx * nxi);
  for (std::size_t n = 0; n < nx; ++n) {
    for (std::size_t m = 0; m < nxi; ++m) {
      const cplx core = W(n, nxi - 1 - m) * U(nx - 1 - n, m);
      const double phase = tfgrid.x.at(n) * tfgrid.xi.at(m);
      plus[n * nxi + m] = std::polar(1.0, phase) * core;
      minus[n * nxi + m] = std::polar(1.0, -phase) * core;
    }
  }

  double ref = 0.0;
  for (const auto& v : lhs) ref = std::max(ref, std::abs(v));
  ProductTransformDefect out;
  out.defect_plus = max_abs_diff(lhs, plus);
  out.defect_minus = max_abs_diff(lhs, minus);
  if (ref > 0.0) {
    out.defect_plus /= ref;
    out.defect_minus /= ref;
  }
  out.winning_sign = out.defect_minus < out.defect_plus ? -1 : +1;
  return out;
}

double toeplitz_adjoint_residual(const TFR& a, const SampledFunction& phi1, const SampledFunction& phi2,
                                 const SampledFunction& f, const SampledFunction& g) {
  const cplx left = inner_product(apply_toeplitz(a, phi1, phi2, f), g);
  const TFR V1 = stft(f, phi1, a.grid());
  const TFR V2 = stft(g, phi2, a.grid());
  cplx right = 0.0;
  for (std::size_t j = 0; j < V1.values().size(); ++j)
    right += a.values()[j] * std::conj(std::conj(V1.values()[j]) * V2.values()[j]);
  right *= a.grid().x.step() * a.grid().xi.step();
  const double scale = std::max(std::abs(left), std::abs(right));
  return scale == 0.0 ? 0.0 : std::abs(left - right) / scale;
}

double toeplitz_quadratic_form(const TFR& a, const SampledFunction& phi, const SampledFunction& f) {
  return inner_product(apply_toeplitz(a, phi, phi, f), f).real();
}

ContinuityReport continuity_probe(const TFR& a, const SampledFunction& phi1, const SampledFunction& phi2,
                                  const std::vector<SampledFunction>& testset, const GSIndex& idx,
                                  const ClassifyOptions& opts) {
  if (!idx.one_parameter())
    throw Error(ErrorKind::TwoParameterIndex, "continuity probe needs a one-parameter index");
  for (const SampledFunction* w : {&phi1, &phi2}) {
    const auto r = classify_function(*w, idx, opts);
    if (r.verdict != Verdict::Member)
      throw Error(ErrorKind::WindowNotInClass, "window is not a member of " + idx.name());
  }
  ContinuityReport report;
  report.space = idx.name();
  const double param = idx.has_s() ? idx.s : idx.sigma;
  const SymbolSide side = idx.has_s() ? SymbolSide::PositionDecay : SymbolSide::FrequencyDecay;
  report.symbol_verdict = classify_symbol(a, param, side, opts).verdict;

  for (const auto& f : testset) {
    const auto in = classify_function(f, idx, opts);
    const auto out = classify_function(apply_toeplitz(a, phi1, phi2, f), idx, opts);
    ContinuityEntry e;
    e.verdict_in = in.verdict;
    e.verdict_out = out.verdict;
    e.r_fit_in = in.r_fit;
    e.r_fit_out = out.r_fit;
    e.degradation = in.r_fit > 0.0 && std::isfinite(in.r_fit) ? out.r_fit / in.r_fit : 0.0;
    if (out.verdict == Verdict::Member) ++report.members_out;
    report.entries.push_back(e);
  }
  report.all_member = report.members_out == report.entries.size();
  return report;
}

}  // namespace gstf
