#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gstf/catalog.hpp"
#include "gstf/parallel.hpp"
#include "gstf/transforms.hpp"
#include "gstf/verify.hpp"
#include "oracles.hpp"

using namespace gstf;
using FS = FunctionSpec;

namespace {

const Grid1D kGrid = build_grid(12.0, 10);

SampledFunction ev(const FS& spec, const Grid1D& g = kGrid) { return catalog_eval(spec, g); }

std::vector<cplx> values(const SampledFunction& f) { return {f.values().begin(), f.values().end()}; }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

TFGrid lattice_tf() { return {build_lattice(8 * kGrid.step(), 63), build_lattice(dual_grid(kGrid).step(), 46)}; }

}  // namespace

TEST_CASE("dft of gaussian(1) is itself") {
  for (auto [hw, e] : {std::pair{8.0, 8}, std::pair{12.0, 10}, std::pair{20.0, 12}}) {
    const Grid1D g = build_grid(hw, e);
    const auto F = dft(ev(FS::gaussian(1.0), g));
    double dev = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) dev = std::max(dev, std::abs(F[k] - oracle::gauss(1.0, F.grid().at(k))));
    CHECK(dev <= 1e-10);
  }
}

TEST_CASE("dft matches analytic transforms") {
  const auto F = dft(ev(FS::translate(FS::gaussian(1.0), 1.0)));
  const auto G = dft(ev(FS::gaussian(2.5)));
  double dt = 0.0, dg = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double xi = F.grid().at(k);
    dt = std::max(dt, std::abs(F[k] - oracle::gauss(1.0, xi) * std::polar(1.0, -xi)));
    dg = std::max(dg, std::abs(G[k] - oracle::gauss_hat(2.5, xi)));
  }
  CHECK(dt <= 1e-9);
  CHECK(dg <= 1e-10);
}

TEST_CASE("dft matches direct quadrature off the Gaussian family") {
  // hermite(3) times a modulation: independent trapezoid integrals at a few frequencies.
  const FS spec = FS::modulate(FS::hermite(3), 0.75);
  const auto F = dft(ev(spec));
  for (std::size_t k : {400u, 480u, 512u, 530u, 600u}) {
    const double xi = F.grid().at(k);
    const cplx want = oracle::fourier_quad([&](double t) { return evaluate(spec, t); }, xi);
    CHECK(std::abs(F[k] - want) <= 1e-9);
  }
}

TEST_CASE("zero in, zero out") {
  const auto z = SampledFunction::zeros(kGrid);
  CHECK(dft(z).sup_abs() == 0.0);
  CHECK(idft(z).sup_abs() == 0.0);
  CHECK(stft(z, ev(FS::gaussian(1.0)), default_tfgrid(kGrid)).sup_abs() == 0.0);
  CHECK(adjoint_stft(TFR::zeros(default_tfgrid(kGrid)), ev(FS::gaussian(1.0))).sup_abs() == 0.0);
}

TEST_CASE("inversion and unitarity on the catalog") {
  for (const auto& [name, f] : reference_catalog(kGrid)) {
    CAPTURE(name);
    const auto F = dft(f);
    CHECK(std::abs(F.l2_norm() - f.l2_norm()) <= 1e-12 * f.l2_norm());
    CHECK(oracle::rel_dev(values(idft(F)), values(f)) <= 1e-10);
  }
}

TEST_CASE("hermite functions are eigenfunctions") {
  for (int k = 0; k <= 3; ++k) {
    const auto f = ev(FS::hermite(k));
    const auto F = dft(f);
    const cplx eig = std::pow(cplx(0.0, -1.0), k);
    std::vector<cplx> want(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double xi = F.grid().at(j);
      want[j] = eig * oracle::hermite_poly(k, xi) * std::exp(-0.5 * xi * xi);
    }
    CHECK(oracle::rel_dev(values(F), want) <= 1e-8);
    // idft(dft h2) = h2 as well.
    CHECK(oracle::rel_dev(values(idft(F)), values(f)) <= 1e-8);
  }
}

TEST_CASE("dft refuses non power-of-two and off-center grids") {
  CHECK(kind_of([] { dft(SampledFunction::zeros(Grid1D(0.0, 0.1, 100))); }) == ErrorKind::NotPowerOfTwo);
  CHECK(kind_of([] { dft(SampledFunction::zeros(Grid1D(1.0, 0.1, 128))); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Gaussian STFT closed form") {
  const TFGrid tf = default_tfgrid(kGrid);
  const auto g1 = ev(FS::gaussian(1.0));
  const TFR V = stft(g1, g1, tf);
  double dev = 0.0;
  for (std::size_t i = 0; i < V.rows(); ++i)
    for (std::size_t k = 0; k < V.cols(); ++k)
      dev = std::max(dev, std::abs(std::abs(V(i, k)) - std::abs(oracle::gauss_stft(1.0, 1.0, tf.x.at(i), tf.xi.at(k)))));
  CHECK(dev <= 1e-6);
  const std::size_t i0 = V.rows() / 2, k0 = V.cols() / 2;
  REQUIRE(tf.x.at(i0) == 0.0);
  // The dual grid of an even count has no zero frequency; compare there with the closed form.
  CHECK(std::abs(std::abs(V(i0, k0)) - std::abs(oracle::gauss_stft(1.0, 1.0, 0.0, tf.xi.at(k0)))) <= 1e-12);
  CHECK(std::abs(std::sqrt(0.5) - std::abs(oracle::gauss_stft(1.0, 1.0, 0.0, 0.0))) <= 1e-15);

  // Full complex values, unequal widths, on lattice frequencies (direct-sum path).
  const TFGrid lat = lattice_tf();
  const TFR W = stft(ev(FS::gaussian(0.7)), ev(FS::gaussian(1.3)), lat);
  double dw = 0.0;
  for (std::size_t i = 0; i < W.rows(); ++i)
    for (std::size_t k = 0; k < W.cols(); ++k)
      dw = std::max(dw, std::abs(W(i, k) - oracle::gauss_stft(0.7, 1.3, lat.x.at(i), lat.xi.at(k))));
  CHECK(dw <= 1e-9);
}

TEST_CASE("stft preconditions") {
  const auto g1 = ev(FS::gaussian(1.0));
  const auto other = catalog_eval(FS::gaussian(1.0), build_grid(10.0, 10));
  CHECK(kind_of([&] { stft(g1, other, default_tfgrid(kGrid)); }) == ErrorKind::GridMismatch);
  const TFGrid off{build_lattice(1.5 * kGrid.step(), 10), dual_grid(kGrid)};
  CHECK(kind_of([&] { stft(g1, g1, off); }) == ErrorKind::NotOnGrid);
}

TEST_CASE("Moyal and inversion") {
  const TFGrid tf = default_tfgrid(kGrid);
  const auto g1 = ev(FS::gaussian(1.0));
  CHECK(moyal_defect(ev(FS::hermite(3)), g1, tf) <= 1e-6);
  // Oracle: ||V||^2 = ||h3||^2 ||g1||^2 with analytic norms.
  const TFR V = stft(ev(FS::hermite(3)), g1, tf);
  double e = 0.0;
  for (const auto& v : V.values()) e += std::norm(v);
  e *= tf.x.step() * tf.xi.step();
  CHECK(std::abs(e - oracle::hermite_norm2(3) * std::sqrt(oracle::kPi)) <= 1e-6 * e);

  const auto back = adjoint_stft(stft(g1, g1, tf), g1);
  std::vector<cplx> want(g1.size());
  for (std::size_t j = 0; j < want.size(); ++j) want[j] = std::sqrt(oracle::kPi) * g1[j];
  CHECK(oracle::rel_dev(values(back), want) <= 1e-5);

  const auto h2 = ev(FS::hermite(2));
  const auto back2 = adjoint_stft(stft(h2, g1, tf), g1);
  std::vector<cplx> scaled(h2.size());
  for (std::size_t j = 0; j < h2.size(); ++j) scaled[j] = back2[j] / std::sqrt(oracle::kPi);
  CHECK(oracle::rel_dev(scaled, values(h2)) <= 1e-5);
  CHECK(stft_inversion_defect(h2, g1, tf) <= 1e-5);
}

TEST_CASE("STFT-Fourier symmetry") {
  const TFGrid lat = lattice_tf();
  for (const FS& spec : {FS::hermite(1), FS::translate(FS::gaussian(1.0), 0.5)}) {
    const auto f = ev(spec);
    const auto phi = ev(FS::gaussian(1.0));
    const TFR V = stft(f, phi, lat);
    const TFR W = stft(dft(f), dft(phi), TFGrid{lat.xi, lat.x});
    double dev = 0.0;
    for (std::size_t i = 0; i < V.rows(); ++i)
      for (std::size_t k = 0; k < V.cols(); ++k)
        dev = std::max(dev, std::abs(std::abs(V(i, k)) - std::abs(W(k, V.rows() - 1 - i))));
    CHECK(dev <= 1e-6);
  }
}

TEST_CASE("linearity of the transforms") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  const auto f = ev(FS::hermite(2));
  const auto g = ev(FS::modulate(FS::gaussian(1.5), -1.0));
  const auto phi = ev(FS::gaussian(1.0));
  const TFGrid tf = default_tfgrid(kGrid);
  for (int trial = 0; trial < 3; ++trial) {
    const cplx a(n(rng), n(rng)), b(n(rng), n(rng));
    std::vector<cplx> c(f.size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = a * f[j] + b * g[j];
    const SampledFunction comb(kGrid, c);
    const auto Fc = dft(comb), Ff = dft(f), Fg = dft(g);
    std::vector<cplx> want(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) want[j] = a * Ff[j] + b * Fg[j];
    CHECK(oracle::rel_dev(values(Fc), want) <= 1e-12);
    const TFR Vc = stft(comb, phi, tf), Vf = stft(f, phi, tf), Vg = stft(g, phi, tf);
    std::vector<cplx> got(Vc.values().begin(), Vc.values().end()), exp(got.size());
    for (std::size_t j = 0; j < exp.size(); ++j) exp[j] = a * Vf.values()[j] + b * Vg.values()[j];
    CHECK(oracle::rel_dev(got, exp) <= 1e-12);
  }
}

TEST_CASE("spectral derivative") {
  const auto g1 = ev(FS::gaussian(1.0));
  const auto d1 = spectral_derivative(g1, 1);
  const auto d0 = spectral_derivative(ev(FS::hermite(2)), 0);
  const auto d2 = spectral_derivative(ev(FS::hermite(0)), 2);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t j = 0; j < g1.size(); ++j) {
    const double x = kGrid.at(j);
    // D = -i d/dx.
    e1 = std::max(e1, std::abs(d1[j] - cplx(0.0, -1.0) * (-x * std::exp(-0.5 * x * x))));
    e2 = std::max(e2, std::abs(d2[j] - (-1.0) * (x * x - 1.0) * std::exp(-0.5 * x * x)));
  }
  CHECK(e1 <= 1e-8);
  CHECK(e2 <= 1e-7);
  CHECK(oracle::rel_dev(values(d0), values(ev(FS::hermite(2)))) <= 1e-12);
  CHECK(kind_of([] { spectral_derivative(catalog_eval(FS::gaussian(0.01), kGrid), 1); }) == ErrorKind::BoundaryMass);
}

TEST_CASE("twisted convolution identity") {
  const TFGrid lat = lattice_tf();
  const auto g1 = ev(FS::gaussian(1.0));
  CHECK(twisted_convolution_defect(g1, g1, g1, g1, lat, 4) <= 1e-4);
  CHECK(twisted_convolution_defect(ev(FS::hermite(1)), g1, g1, g1, lat, 4) <= 1e-4);
  CHECK(twisted_convolution_defect(SampledFunction::zeros(kGrid), g1, g1, g1, lat, 4) == 0.0);
  const TFGrid tight{build_lattice(8 * kGrid.step(), 20), lat.xi};
  CHECK(kind_of([&] { twisted_convolution_defect(g1, g1, g1, g1, tight, 4); }) == ErrorKind::BoundaryMass);
}

TEST_CASE("fourier2d of a separable Gaussian") {
  const TFGrid tf{build_lattice(0.25, 40), build_lattice(0.25, 40)};
  std::vector<cplx> v;
  for (std::size_t i = 0; i < tf.x.count(); ++i)
    for (std::size_t k = 0; k < tf.xi.count(); ++k)
      v.push_back(oracle::gauss(1.0, tf.x.at(i)) * oracle::gauss(2.0, tf.xi.at(k)));
  const TFR A = fourier2d(TFR(tf, v));
  const Grid1D eta = dual_grid(tf.x), y = dual_grid(tf.xi);
  double dev = 0.0;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k)
      dev = std::max(dev, std::abs(A(i, k) - oracle::gauss_hat(1.0, eta.at(i)) * oracle::gauss_hat(2.0, y.at(k))));
  CHECK(dev <= 1e-9);
}

TEST_CASE("stft is independent of the thread count") {
  const auto f = ev(FS::hermite(3));
  const auto phi = ev(FS::gaussian(1.0));
  const TFGrid tf = default_tfgrid(kGrid);
  set_thread_count(1);
  const TFR a = stft(f, phi, tf);
  set_thread_count(4);
  const TFR b = stft(f, phi, tf);
  const auto ia = adjoint_stft(a, phi);
  set_thread_count(1);
  const auto ib = adjoint_stft(a, phi);
  for (std::size_t j = 0; j < a.values().size(); ++j) REQUIRE(a.values()[j] == b.values()[j]);
  for (std::size_t j = 0; j < ia.size(); ++j) REQUIRE(ia[j] == ib[j]);
}
