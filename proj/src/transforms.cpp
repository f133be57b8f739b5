#include "gstf/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>

#include "gstf/parallel.hpp"

namespace gstf {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

// FFTW planning is not thread-safe; execution on a shared plan is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan forward(std::size_t n) {
    std::scoped_lock lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<cplx> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan =
        fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(n, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, fftw_plan> plans_;
};

// exp(i * pi * m / d) with m reduced exactly in integers.
cplx unit_phase(std::int64_t m, std::int64_t d) {
  return std::polar(1.0, kPi * static_cast<double>(m) / static_cast<double>(d));
}

std::vector<cplx> forward_centered(std::span<const cplx> in, const Grid1D& grid) {
  const auto n = static_cast<std::int64_t>(in.size());
  // t_j xi_k = (2 pi / n) (j - c)(k - c) with c = (n - 1) / 2.
  std::vector<cplx> work(in.size());
  for (std::int64_t j = 0; j < n; ++j) work[j] = in[j] * unit_phase(((n - 1) * j) % (2 * n), n);
  auto* buf = reinterpret_cast<fftw_complex*>(work.data());
  fftw_execute_dft(PlanCache::instance().forward(in.size()), buf, buf);
  const cplx global = std::conj(unit_phase(((n - 1) * (n - 1)) % (4 * n), 2 * n));
  const double scale = grid.step() * kInvSqrt2Pi;
  for (std::int64_t k = 0; k < n; ++k) work[k] *= scale * global * unit_phase(((n - 1) * k) % (2 * n), n);
  return work;
}

std::optional<std::vector<std::size_t>> aligned_indices(const Grid1D& points, const Grid1D& lattice) {
  std::vector<std::size_t> idx(points.count());
  for (std::size_t k = 0; k < points.count(); ++k) {
    const double u = (points.at(k) - lattice.at(0)) / lattice.step();
    const double r = std::round(u);
    if (std::abs(u - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(lattice.count())) return std::nullopt;
    idx[k] = static_cast<std::size_t>(r);
  }
  return idx;
}

std::vector<std::ptrdiff_t> shifts_for(const Grid1D& xgrid, const Grid1D& signal) {
  std::vector<std::ptrdiff_t> m(xgrid.count());
  for (std::size_t i = 0; i < xgrid.count(); ++i) m[i] = shift_index(xgrid.at(i), signal);
  return m;
}

double edge_ratio(const SampledFunction& f) {
  const double sup = f.sup_abs();
  if (sup == 0.0) return 0.0;
  const std::size_t n = f.size();
  const double edge = std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[n - 2]), std::abs(f[n - 1])});
  return edge / sup;
}

void require_same_grid(const SampledFunction& a, const SampledFunction& b, const char* what) {
  if (!a.grid().matches(b.grid())) throw Error(ErrorKind::GridMismatch, std::string(what) + ": grids differ");
}

}  // namespace

namespace detail {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

std::vector<cplx> centered_transform(std::span<const cplx> in, const Grid1D& grid, int sign) {
  if (sign < 0) return forward_centered(in, grid);
  std::vector<cplx> conj_in(in.size());
  std::transform(in.begin(), in.end(), conj_in.begin(), [](const cplx& v) { return std::conj(v); });
  auto out = forward_centered(conj_in, grid);
  for (auto& v : out) v = std::conj(v);
  return out;
}

}  // namespace detail

namespace {

void require_fft_grid(const Grid1D& grid) {
  if (!detail::is_power_of_two(grid.count())) throw Error(ErrorKind::NotPowerOfTwo, "sample count must be a power of two");
  if (!grid.centered()) throw Error(ErrorKind::InvalidArgument, "transform needs a grid centered at 0");
}

}  // namespace

SampledFunction dft(const SampledFunction& f) {
  require_fft_grid(f.grid());
  return SampledFunction(dual_grid(f.grid()), detail::centered_transform(f.values(), f.grid(), -1));
}

SampledFunction idft(const SampledFunction& F) {
  require_fft_grid(F.grid());
  return SampledFunction(dual_grid(F.grid()), detail::centered_transform(F.values(), F.grid(), +1));
}

std::vector<cplx> fourier_at(const SampledFunction& f, std::span<const double> freqs) {
  const double scale = f.grid().step() * kInvSqrt2Pi;
  std::vector<cplx> out(freqs.size());
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * std::polar(1.0, -f.grid().at(j) * freqs[k]);
    out[k] = scale * acc;
  }
  return out;
}

std::ptrdiff_t shift_index(double x, const Grid1D& grid) {
  const double u = x / grid.step();
  const double r = std::round(u);
  if (std::abs(u - r) > 1e-9 * std::max(1.0, std::abs(u))) {
    throw Error(ErrorKind::NotOnGrid, "position is not an integer multiple of the sample step");
  }
  return static_cast<std::ptrdiff_t>(r);
}

TFR stft(const SampledFunction& f, const SampledFunction& window, const TFGrid& tfgrid) {
  require_same_grid(f, window, "stft");
  const Grid1D& grid = f.grid();
  const std::size_t n = grid.count();
  const auto shifts = shifts_for(tfgrid.x, grid);
  const std::size_t cols = tfgrid.xi.count();

  std::optional<std::vector<std::size_t>> fft_idx;
  if (detail::is_power_of_two(n) && grid.centered()) fft_idx = aligned_indices(tfgrid.xi, dual_grid(grid));

  // Direct path: phase[k * n + j] = e^{-i t_j xi_k} dt / sqrt(2 pi).
  std::vector<cplx> phase;
  if (!fft_idx) {
    phase.resize(cols * n);
    const double scale = grid.step() * kInvSqrt2Pi;
    for (std::size_t k = 0; k < cols; ++k)
      for (std::size_t j = 0; j < n; ++j) phase[k * n + j] = scale * std::polar(1.0, -grid.at(j) * tfgrid.xi.at(k));
  }

  std::vector<cplx> out(tfgrid.x.count() * cols);
  parallel_for(tfgrid.x.count(), [&](std::size_t i) {
    std::vector<cplx> g(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(j) - shifts[i];
      if (w >= 0 && w < static_cast<std::ptrdiff_t>(n)) g[j] = f[j] * std::conj(window[static_cast<std::size_t>(w)]);
    }
    cplx* row = out.data() + i * cols;
    if (fft_idx) {
      const auto spectrum = detail::centered_transform(g, grid, -1);
      for (std::size_t k = 0; k < cols; ++k) row[k] = spectrum[(*fft_idx)[k]];
    } else {
      for (std::size_t k = 0; k < cols; ++k) {
        cplx acc = 0.0;
        const cplx* p = phase.data() + k * n;
        for (std::size_t j = 0; j < n; ++j) acc += g[j] * p[j];
        row[k] = acc;
      }
    }
  });
  return TFR(tfgrid, std::move(out));
}

SampledFunction adjoint_stft(const TFR& F, const SampledFunction& window) {
  const Grid1D& grid = window.grid();
  const TFGrid& tf = F.grid();
  const std::size_t n = grid.count();
  const std::size_t cols = F.cols();
  const auto shifts = shifts_for(tf.x, grid);

  std::optional<std::vector<std::size_t>> fft_idx;
  Grid1D dual = dual_grid(grid);
  if (detail::is_power_of_two(n) && grid.centered()) fft_idx = aligned_indices(tf.xi, dual);

  std::vector<cplx> phase;
  if (!fft_idx) {
    phase.resize(n * cols);
    const double scale = tf.xi.step() * kInvSqrt2Pi;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < cols; ++k) phase[j * cols + k] = scale * std::polar(1.0, grid.at(j) * tf.xi.at(k));
  }

  // Per-row contributions, reduced afterwards in row order.
  std::vector<cplx> partial(F.rows() * n);
  parallel_for(F.rows(), [&](std::size_t i) {
    std::vector<cplx> h(n);
    if (fft_idx) {
      std::vector<cplx> spectrum(n);
      for (std::size_t k = 0; k < cols; ++k) spectrum[(*fft_idx)[k]] += F(i, k);
      h = detail::centered_transform(spectrum, dual, +1);
      const double cell = tf.xi.step() / dual.step();
      for (auto& v : h) v *= cell;
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < cols; ++k) acc += F(i, k) * phase[j * cols + k];
        h[j] = acc;
      }
    }
    cplx* dst = partial.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(j) - shifts[i];
      if (w >= 0 && w < static_cast<std::ptrdiff_t>(n)) dst[j] = window[static_cast<std::size_t>(w)] * h[j];
    }
  });

  std::vector<cplx> g(n);
  for (std::size_t i = 0; i < F.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) g[j] += partial[i * n + j];
  for (auto& v : g) v *= tf.x.step();
  return SampledFunction(grid, std::move(g));
}

SampledFunction spectral_derivative(const SampledFunction& f, int order) {
  if (order < 0 || order > 8) throw Error(ErrorKind::InvalidArgument, "derivative order must lie in [0, 8]");
  if (edge_ratio(f) >= 1e-10) throw Error(ErrorKind::BoundaryMass, "function has not decayed at the grid edges");
  if (order == 0) return f;
  const SampledFunction F = dft(f);
  std::vector<cplx> weighted(F.values().begin(), F.values().end());
  for (std::size_t k = 0; k < weighted.size(); ++k) weighted[k] *= std::pow(F.grid().at(k), order);
  const SampledFunction out = idft(SampledFunction(F.grid(), std::move(weighted)));
  return SampledFunction(f.grid(), std::vector<cplx>(out.values().begin(), out.values().end()));
}

cplx inner_product(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g, "inner_product");
  cplx acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * std::conj(g[j]);
  return acc * f.grid().step();
}

namespace {

// One axis of fourier2d: transform `count` strided sequences living on `grid`.
std::vector<cplx> transform_axis(std::span<const cplx> seq, const Grid1D& grid) {
  if (grid.centered()) return detail::centered_transform(seq, grid, -1);
  const Grid1D dual = dual_grid(grid);
  std::vector<cplx> out(seq.size());
  const double scale = grid.step() * kInvSqrt2Pi;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < seq.size(); ++j) acc += seq[j] * std::polar(1.0, -grid.at(j) * dual.at(k));
    out[k] = scale * acc;
  }
  return out;
}

}  // namespace

TFR fourier2d(const TFR& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const TFGrid& tf = a.grid();
  std::vector<cplx> mid(rows * cols);
  parallel_for(rows, [&](std::size_t i) {
    const auto row = transform_axis(a.values().subspan(i * cols, cols), tf.xi);
    std::copy(row.begin(), row.end(), mid.begin() + static_cast<std::ptrdiff_t>(i * cols));
  });
  std::vector<cplx> out(rows * cols);
  parallel_for(cols, [&](std::size_t k) {
    std::vector<cplx> column(rows);
    for (std::size_t i = 0; i < rows; ++i) column[i] = mid[i * cols + k];
    const auto t = transform_axis(column, tf.x);
    for (std::size_t i = 0; i < rows; ++i) out[i * cols + k] = t[i];
  });
  return TFR(TFGrid{dual_grid(tf.x), dual_grid(tf.xi)}, std::move(out));
}

double moyal_defect(const SampledFunction& f, const SampledFunction& window, const TFGrid& tfgrid) {
  const TFR V = stft(f, window, tfgrid);
  double energy = 0.0;
  for (const auto& v : V.values()) energy += std::norm(v);
  energy *= tfgrid.x.step() * tfgrid.xi.step();
  const double expected = std::pow(f.l2_norm() * window.l2_norm(), 2);
  if (expected == 0.0) return energy;
  return std::abs(energy - expected) / expected;
}

double stft_inversion_defect(const SampledFunction& f, const SampledFunction& window, const TFGrid& tfgrid) {
  const SampledFunction g = adjoint_stft(stft(f, window, tfgrid), window);
  const double norm2 = std::pow(window.l2_norm(), 2);
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    err = std::max(err, std::abs(g[j] - norm2 * f[j]));
    ref = std::max(ref, std::abs(norm2 * f[j]));
  }
  return ref == 0.0 ? err : err / ref;
}

double boundary_ratio(const TFR& a) {
  const double sup = a.sup_abs();
  if (sup == 0.0) return 0.0;
  double edge = 0.0;
  for (std::size_t k = 0; k < a.cols(); ++k) edge = std::max({edge, std::abs(a(0, k)), std::abs(a(a.rows() - 1, k))});
  for (std::size_t i = 0; i < a.rows(); ++i) edge = std::max({edge, std::abs(a(i, 0)), std::abs(a(i, a.cols() - 1))});
  return edge / sup;
}

double twisted_convolution_defect(const SampledFunction& f, const SampledFunction& phi1, const SampledFunction& phi2,
                                  const SampledFunction& phi3, const TFGrid& tfgrid, std::size_t stride) {
  require_same_grid(f, phi1, "twisted_convolution_defect");
  require_same_grid(f, phi2, "twisted_convolution_defect");
  require_same_grid(f, phi3, "twisted_convolution_defect");
  for (const Grid1D* axis : {&tfgrid.x, &tfgrid.xi}) {
    if (axis->count() % 2 == 0 || !axis->centered())
      throw Error(ErrorKind::InvalidArgument, "twisted convolution needs centered odd-count lattices");
  }
  if (stride == 0) stride = 1;

  const TFR A = stft(f, phi1, tfgrid);
  const TFR B = stft(phi3, phi2, tfgrid);
  const TFR lhs_stft = stft(f, phi2, tfgrid);
  constexpr double kBoundary = 1e-10;
  if (boundary_ratio(A) > kBoundary || boundary_ratio(B) > kBoundary) {
    throw Error(ErrorKind::BoundaryMass, "STFTs have not decayed at the tfgrid boundary");
  }
  const cplx pairing = inner_product(phi3, phi1);

  const auto nx = static_cast<std::ptrdiff_t>(tfgrid.x.count());
  const auto nxi = static_cast<std::ptrdiff_t>(tfgrid.xi.count());
  const std::ptrdiff_t cx = (nx - 1) / 2;
  const std::ptrdiff_t cxi = (nxi - 1) / 2;
  const double dx = tfgrid.x.step();
  const double dxi = tfgrid.xi.step();

  // phase[(d + 2cx) * nxi + q] = e^{-i (d dx)(eta_q)}, d = offset of x - y.
  std::vector<cplx> phase(static_cast<std::size_t>((4 * cx + 1) * nxi));
  for (std::ptrdiff_t d = -2 * cx; d <= 2 * cx; ++d)
    for (std::ptrdiff_t q = 0; q < nxi; ++q)
      phase[static_cast<std::size_t>((d + 2 * cx) * nxi + q)] = std::polar(1.0, -static_cast<double>(d) * dx * tfgrid.xi.at(q));

  std::vector<std::size_t> out_rows;
  for (std::ptrdiff_t i = 0; i < nx; i += static_cast<std::ptrdiff_t>(stride)) out_rows.push_back(static_cast<std::size_t>(i));
  std::vector<double> row_err(out_rows.size(), 0.0);
  std::vector<double> row_ref(out_rows.size(), 0.0);
  const double weight = kInvSqrt2Pi * dx * dxi;

  parallel_for(out_rows.size(), [&](std::size_t r) {
    const auto i = static_cast<std::ptrdiff_t>(out_rows[r]);
    for (std::ptrdiff_t k = 0; k < nxi; k += static_cast<std::ptrdiff_t>(stride)) {
      cplx acc = 0.0;
      for (std::ptrdiff_t p = 0; p < nx; ++p) {
        const std::ptrdiff_t d = i - p;  // offset of x - y
        const std::ptrdiff_t ai = d + cx;
        if (ai < 0 || ai >= nx) continue;
        const cplx* ph = phase.data() + (d + 2 * cx) * nxi;
        for (std::ptrdiff_t q = 0; q < nxi; ++q) {
          const std::ptrdiff_t ak = k - q + cxi;
          if (ak < 0 || ak >= nxi) continue;
          acc += A(static_cast<std::size_t>(ai), static_cast<std::size_t>(ak)) *
                 B(static_cast<std::size_t>(p), static_cast<std::size_t>(q)) * ph[q];
        }
      }
      const cplx rhs = weight * acc;
      const cplx lhs = pairing * lhs_stft(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
      row_err[r] = std::max(row_err[r], std::abs(lhs - rhs));
      row_ref[r] = std::max(row_ref[r], std::abs(lhs));
    }
  });
  const double err = *std::max_element(row_err.begin(), row_err.end());
  const double ref = *std::max_element(row_ref.begin(), row_ref.end());
  return ref == 0.0 ? err : err / ref;
}

}  // namespace gstf
