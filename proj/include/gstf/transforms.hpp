#pragma once

#include <span>
#include <vector>

#include "gstf/types.hpp"

namespace gstf {

// Conventions. All discrete sums carry their cell widths so that outputs
// approximate the continuum objects:
//   f^(xi)       = (2 pi)^-1/2 sum_j f(t_j) e^{-i t_j xi} dt
//   V_phi f(x,xi) = (2 pi)^-1/2 sum_j f(t_j) conj(phi(t_j - x)) e^{-i t_j xi} dt
// and D = -i d/dx.

/// Fourier transform onto dual_grid(f.grid()). Needs a centered grid with a
/// power-of-two count.
SampledFunction dft(const SampledFunction& f);

/// Inverse of dft; the result lives on dual_grid(F.grid()).
SampledFunction idft(const SampledFunction& F);

/// Direct Riemann sum of the Fourier integral at arbitrary frequencies.
std::vector<cplx> fourier_at(const SampledFunction& f, std::span<const double> freqs);

/// Index offset m with x = m * step; throws NotOnGrid otherwise.
std::ptrdiff_t shift_index(double x, const Grid1D& grid);

/// Short-time Fourier transform sampled on tfgrid. Window shifts are index
/// shifts with zero fill, so every tfgrid.x point must be an integer multiple
/// of the sample step. Frequencies on the dual grid use the FFT; any other
/// frequencies are summed directly.
TFR stft(const SampledFunction& f, const SampledFunction& window, const TFGrid& tfgrid);

/// g(t) = (2 pi)^-1/2 sum_{x,xi} F(x,xi) phi(t - x) e^{i t xi} dx dxi on the window grid.
SampledFunction adjoint_stft(const TFR& F, const SampledFunction& window);

/// D^order f = F^-1[xi^order f^]. Refuses inputs that have not decayed at the
/// grid edges (relative 1e-10), since the periodic extension would alias.
SampledFunction spectral_derivative(const SampledFunction& f, int order);

/// (f, g) = sum f conj(g) dt.
cplx inner_product(const SampledFunction& f, const SampledFunction& g);

/// Two-dimensional transform a^(eta, y) = (2 pi)^-1 sum a(x,xi) e^{-i(x eta + xi y)} dx dxi,
/// computed by row and column passes. Rows of the result index eta on
/// dual_grid(x), columns index y on dual_grid(xi).
TFR fourier2d(const TFR& a);

/// Relative energy defect | ||V_phi f||^2 - ||f||^2 ||phi||^2 | / (||f||^2 ||phi||^2).
double moyal_defect(const SampledFunction& f, const SampledFunction& window, const TFGrid& tfgrid);

/// max |V*_phi V_phi f - ||phi||^2 f| / max |||phi||^2 f|.
double stft_inversion_defect(const SampledFunction& f, const SampledFunction& window, const TFGrid& tfgrid);

/// Largest |value| on the outermost rows/columns divided by the overall sup.
double boundary_ratio(const TFR& a);

/// Relative max-norm defect between the two sides of
///   (phi3, phi1) V_phi2 f(x,xi) = (2 pi)^-1/2 sum V_phi1 f(x-y, xi-eta) V_phi2 phi3(y,eta) e^{-i(x-y)eta} dy deta.
/// tfgrid axes must be centered odd-count lattices so differences stay on the
/// lattice. Output points are visited with the given stride.
double twisted_convolution_defect(const SampledFunction& f, const SampledFunction& phi1, const SampledFunction& phi2,
                                  const SampledFunction& phi3, const TFGrid& tfgrid, std::size_t stride = 1);

namespace detail {
/// Centered transform of any length: out_k = scale * sum_j in_j e^{sign i t_j xi_k}
/// for t on `grid` and xi on dual_grid(grid), with scale = step / sqrt(2 pi).
std::vector<cplx> centered_transform(std::span<const cplx> in, const Grid1D& grid, int sign);
bool is_power_of_two(std::size_t n);
}  // namespace detail

}  // namespace gstf
